use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

/// Dirac matrices in the standard representation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracAlgebra {
    pub sigma: [Matrix2<C>; 3],
    pub alpha: [Matrix4<C>; 3],
    pub beta: Matrix4<C>,
    /// Spin matrices Σ_i = diag(σ_i, σ_i).
    pub big_sigma: [Matrix4<C>; 3],
    /// ρ_1, ρ_2, ρ_3: Pauli matrices acting on the upper/lower block index.
    pub rho: [Matrix4<C>; 3],
    /// Charge-conjugation matrix iβα₂.
    pub u_c: Matrix4<C>,
}

/// Kronecker product a ⊗ b of two 2×2 matrices.
pub fn kron(a: &Matrix2<C>, b: &Matrix2<C>) -> Matrix4<C> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Block matrix [[a, b], [c, d]].
pub fn blocks(a: &Matrix2<C>, b: &Matrix2<C>, c: &Matrix2<C>, d: &Matrix2<C>) -> Matrix4<C> {
    Matrix4::from_fn(|r, col| {
        let m = match (r < 2, col < 2) {
            (true, true) => a,
            (true, false) => b,
            (false, true) => c,
            (false, false) => d,
        };
        m[(r % 2, col % 2)]
    })
}

pub fn pauli() -> [Matrix2<C>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

impl DiracAlgebra {
    pub fn standard() -> Self {
        let sigma = pauli();
        let id2 = Matrix2::<C>::identity();
        let rho = [
            kron(&sigma[0], &id2),
            kron(&sigma[1], &id2),
            kron(&sigma[2], &id2),
        ];
        let big_sigma = [
            kron(&id2, &sigma[0]),
            kron(&id2, &sigma[1]),
            kron(&id2, &sigma[2]),
        ];
        let alpha = [
            rho[0] * big_sigma[0],
            rho[0] * big_sigma[1],
            rho[0] * big_sigma[2],
        ];
        let beta = rho[2];
        let u_c = beta * alpha[1] * I;
        Self {
            sigma,
            alpha,
            beta,
            big_sigma,
            rho,
            u_c,
        }
    }

    /// σ·v for a real 3-vector.
    pub fn sigma_dot(&self, v: [f64; 3]) -> Matrix2<C> {
        self.sigma[0] * C::from(v[0])
            + self.sigma[1] * C::from(v[1])
            + self.sigma[2] * C::from(v[2])
    }
}
