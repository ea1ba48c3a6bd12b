use crate::Real;

/// Eigenvalues of a real symmetric `N×N` matrix by cyclic Jacobi rotations,
/// sorted ascending. Only the upper triangle is trusted; the input is
/// symmetrised first.
pub fn symmetric_eigenvalues<T: Real, const N: usize>(mut m: [[T; N]; N]) -> [T; N] {
    let half = T::lit(0.5);
    for p in 0..N {
        for q in p + 1..N {
            let v = half * (m[p][q] + m[q][p]);
            m[p][q] = v;
            m[q][p] = v;
        }
    }
    let total: T = m.iter().flat_map(|row| row.iter()).map(|&v| v * v).sum();
    let threshold = T::epsilon() * T::epsilon() * total;

    for _sweep in 0..64 {
        let off: T = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| m[p][q] * m[p][q])
            .sum();
        if off <= threshold || off == T::zero() {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = m[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                m[p][p] -= t * apq;
                m[q][q] += t * apq;
                m[p][q] = T::zero();
                m[q][p] = T::zero();
                for r in 0..N {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m[r][p];
                    let arq = m[r][q];
                    let np = c * arp - s * arq;
                    let nq = s * arp + c * arq;
                    m[r][p] = np;
                    m[p][r] = np;
                    m[r][q] = nq;
                    m[q][r] = nq;
                }
            }
        }
    }

    let mut eig = [T::zero(); N];
    for (i, e) in eig.iter_mut().enumerate() {
        *e = m[i][i];
    }
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    eig
}
