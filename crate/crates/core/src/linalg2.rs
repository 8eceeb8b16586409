//! Closed-form linear algebra for real 2×2 matrices.
//!
//! Everything here is a pure function on `Copy` values: the exponential via the
//! hyperbolic/trigonometric closed form, eigenvalues from trace and discriminant,
//! the principal square root of a PSD matrix, and the continuous Lyapunov solve
//! `C Σ + Σ Cᵀ + 2 D = 0` reduced to three unknowns.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

/// Real 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, 0.0, d2)
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn to_rows(self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }

    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn transpose(self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn mul_vec(self, v: Vec2) -> Vec2 {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    /// Largest absolute row sum.
    pub fn norm_inf(self) -> f64 {
        (self.a11.abs() + self.a12.abs()).max(self.a21.abs() + self.a22.abs())
    }

    pub fn max_abs(self) -> f64 {
        self.a11
            .abs()
            .max(self.a12.abs())
            .max(self.a21.abs())
            .max(self.a22.abs())
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    /// `(M + Mᵀ) / 2`
    pub fn symmetrize(self) -> Self {
        let off = 0.5 * (self.a12 + self.a21);
        Self::new(self.a11, off, off, self.a22)
    }

    /// `2M − tr(M)·I`, the traceless part scaled by two.
    fn deviator2(self) -> Self {
        Self::new(self.a11 - self.a22, 2.0 * self.a12, 2.0 * self.a21, self.a22 - self.a11)
    }

    /// `(a − d)² + 4bc`, the discriminant of the characteristic polynomial.
    pub fn discriminant(self) -> f64 {
        let diff = self.a11 - self.a22;
        diff * diff + 4.0 * self.a12 * self.a21
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(s)
    }
}

/// Spectrum of a real 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalues {
    /// Real pair, larger first.
    Real(f64, f64),
    /// Conjugate pair `re ± i·im` with `im > 0`.
    Complex { re: f64, im: f64 },
}

impl Eigenvalues {
    pub fn max_real_part(self) -> f64 {
        match self {
            Eigenvalues::Real(hi, _) => hi,
            Eigenvalues::Complex { re, .. } => re,
        }
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(self) -> f64 {
        match self {
            Eigenvalues::Real(hi, lo) => hi.abs().max(lo.abs()),
            Eigenvalues::Complex { re, im } => re.hypot(im),
        }
    }

    pub fn is_hurwitz(self) -> bool {
        self.max_real_part() < 0.0
    }
}

/// Eigenvalues `(tr ± √s) / 2` with `s = (a−d)² + 4bc`.
///
/// The root that would suffer cancellation is recovered from `det / other`.
pub fn eig2(m: Mat2) -> Eigenvalues {
    let tr = m.trace();
    let s = m.discriminant();
    if s < 0.0 {
        return Eigenvalues::Complex {
            re: 0.5 * tr,
            im: 0.5 * (-s).sqrt(),
        };
    }
    let r = s.sqrt();
    let det = m.det();
    let (hi, lo) = if tr >= 0.0 {
        let hi = 0.5 * (tr + r);
        let lo = if hi != 0.0 { det / hi } else { 0.5 * (tr - r) };
        (hi, lo)
    } else {
        let lo = 0.5 * (tr - r);
        let hi = if lo != 0.0 { det / lo } else { 0.5 * (tr + r) };
        (hi, lo)
    };
    Eigenvalues::Real(hi.max(lo), hi.min(lo))
}

/// Matrix exponential from the closed form
/// `exp(M) = e^{tr/2} [cosh(Δ/2)·I + sinh(Δ/2)/Δ · (2M − tr·I)]`, `Δ = √s`.
///
/// `s < 0` continues to `cos`/`sin` of `√(−s)/2`; `s = 0` is the repeated
/// eigenvalue case `e^{tr/2} (I + M − (tr/2) I)`, which also gives `exp(0) = I`.
pub fn expm2(m: Mat2) -> Mat2 {
    let tr = m.trace();
    let s = m.discriminant();
    let dev = m.deviator2();
    let half_tr = 0.5 * tr;

    let (even, odd) = if s > 0.0 {
        let delta = s.sqrt();
        let h = 0.5 * delta;
        if h <= 20.0 {
            let e = half_tr.exp();
            (e * h.cosh(), e * h.sinh() / delta)
        } else {
            // e^{tr/2} cosh(h) = (p + q)/2 with p = e^{tr/2 + h}, q = e^{tr/2 - h}
            let p = (half_tr + h).exp();
            let q = (half_tr - h).exp();
            (0.5 * (p + q), 0.5 * (p - q) / delta)
        }
    } else if s < 0.0 {
        let theta = 0.5 * (-s).sqrt();
        let e = half_tr.exp();
        (e * theta.cos(), e * theta.sin() / (2.0 * theta))
    } else {
        let e = half_tr.exp();
        (e, 0.5 * e)
    };

    Mat2::IDENTITY * even + dev * odd
}

/// Principal square root of a symmetric PSD matrix,
/// `S = (M + √det·I) / √(tr + 2√det)`.
///
/// Small negative eigenvalues (down to `−1e−12·‖M‖`) are clipped to zero.
pub fn sqrtm_spd2(m: Mat2) -> Result<Mat2> {
    if !m.is_finite() {
        return Err(Error::NotSpd("non-finite entries".into()));
    }
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(Mat2::ZERO);
    }
    let tol = 1e-12 * scale;
    if (m.a12 - m.a21).abs() > tol {
        return Err(Error::NotSpd(format!(
            "asymmetry {:e} exceeds tolerance {:e}",
            (m.a12 - m.a21).abs(),
            tol
        )));
    }
    let mut m = m.symmetrize();
    let (hi, lo) = match eig2(m) {
        Eigenvalues::Real(hi, lo) => (hi, lo),
        // symmetric matrices have a real spectrum; a tiny negative discriminant is roundoff
        Eigenvalues::Complex { re, .. } => (re, re),
    };
    if lo < -tol {
        return Err(Error::NotSpd(format!("eigenvalue {lo:e} below tolerance")));
    }
    if lo < 0.0 {
        if hi <= 0.0 {
            return Ok(Mat2::ZERO);
        }
        // keep only the λ_max component: λ_max (M − λ_min I) / (λ_max − λ_min)
        m = (m - Mat2::IDENTITY * lo) * (hi / (hi - lo));
    }
    let root_det = m.det().max(0.0).sqrt();
    let denom = (m.trace() + 2.0 * root_det).max(0.0).sqrt();
    if denom == 0.0 {
        return Ok(Mat2::ZERO);
    }
    Ok((m + Mat2::IDENTITY * root_det) * (1.0 / denom))
}

/// Solves `C Σ + Σ Cᵀ = −2 D` for symmetric `Σ`, the stationary covariance
/// `2 ∫₀^∞ e^{sC} D e^{sCᵀ} ds` of a Hurwitz drift.
///
/// Unknowns `(Σ11, Σ12, Σ22)`; the three independent equations are the
/// (1,1), (1,2) and (2,2) entries.
pub fn solve_lyapunov2(c: Mat2, d: Mat2) -> Result<Mat2> {
    let spec = eig2(c);
    if !spec.is_hurwitz() {
        return Err(Error::NotHurwitz {
            max_real_part: spec.max_real_part(),
        });
    }
    let d_scale = d.max_abs();
    if (d.a12 - d.a21).abs() > 1e-12 * d_scale {
        return Err(Error::NotSpd("diffusion matrix is not symmetric".into()));
    }
    let d = d.symmetrize();

    let a = [
        [c.a11, c.a12, 0.0],
        [c.a21, c.a11 + c.a22, c.a12],
        [0.0, c.a21, c.a22],
    ];
    let b = [-d.a11, -2.0 * d.a12, -d.a22];
    let mut x = solve3(&mut a.clone(), &mut b.clone(), c.max_abs())?;
    // one step of iterative refinement
    let mut r = [0.0; 3];
    for i in 0..3 {
        r[i] = b[i] - (0..3).map(|j| a[i][j] * x[j]).sum::<f64>();
    }
    let dx = solve3(&mut a.clone(), &mut r, c.max_abs())?;
    for i in 0..3 {
        x[i] += dx[i];
    }
    Ok(Mat2::new(x[0], x[1], x[1], x[2]))
}

/// Gaussian elimination with partial pivoting.
fn solve3(a: &mut [[f64; 3]; 3], b: &mut [f64; 3], scale: f64) -> Result<[f64; 3]> {
    let tiny = 1e-14 * scale.max(f64::MIN_POSITIVE);
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() <= tiny {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (head, tail) = a.split_at_mut(col + 1);
        let pivot_row = head[col];
        for (off, r) in tail.iter_mut().enumerate() {
            let f = r[col] / pivot_row[col];
            for (x, p) in r[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            b[col + 1 + off] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Scaling-and-squaring with a truncated Taylor series; shares nothing
    /// with the closed form.
    fn expm_reference(m: Mat2) -> Mat2 {
        let mut squarings = 0;
        let mut scaled = m;
        while scaled.max_abs() > 0.125 {
            scaled = scaled * 0.5;
            squarings += 1;
        }
        let mut term = Mat2::IDENTITY;
        let mut sum = Mat2::IDENTITY;
        for k in 1..30 {
            term = term * scaled * (1.0 / k as f64);
            sum = sum + term;
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }

    fn assert_close(a: Mat2, b: Mat2, tol: f64) {
        let diff = (a - b).max_abs();
        assert!(diff <= tol, "{a:?} vs {b:?}: diff {diff:e} > {tol:e}");
    }

    fn coupled_q(a: f64, d: f64, k: f64) -> Mat2 {
        Mat2::new(a - k, k, k, d - k)
    }

    #[test]
    fn expm_diagonal() {
        let e = expm2(Mat2::diag(1.0, -1.0));
        assert_close(e, Mat2::diag(std::f64::consts::E, (-1.0f64).exp()), 1e-15);
    }

    #[test]
    fn expm_nilpotent_uses_degenerate_branch() {
        let m = Mat2::new(0.0, 1.0, 0.0, 0.0);
        assert_eq!(m.discriminant(), 0.0);
        assert_eq!(expm2(m), Mat2::new(1.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn expm_of_zero_is_identity() {
        assert_eq!(expm2(Mat2::ZERO), Mat2::IDENTITY);
    }

    #[test]
    fn expm_matches_scaling_squaring() {
        let m = Mat2::new(-2.0, 1.0, 1.0, -2.0);
        assert_close(expm2(m), expm_reference(m), 1e-12);
        // complex branch
        let r = Mat2::new(0.3, -2.0, 1.5, -0.4);
        assert!(r.discriminant() < 0.0);
        assert_close(expm2(r), expm_reference(r), 1e-12);
    }

    #[test]
    fn expm_long_time_has_no_overflow() {
        // oscillator drift with gamma = 100, omega = 1 at t = 400
        let c = Mat2::new(0.0, 1.0, -1.0, -100.0) * 400.0;
        let e = expm2(c);
        assert!(e.is_finite(), "{e:?}");
        let lambda2 = 2.0 / (100.0 + (100.0f64 * 100.0 - 4.0).sqrt());
        // slowest mode dominates e^{tC}
        assert!((e.a11 / (-lambda2 * 400.0).exp() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn sqrtm_examples() {
        assert_eq!(sqrtm_spd2(Mat2::IDENTITY).unwrap(), Mat2::IDENTITY);
        assert_close(sqrtm_spd2(Mat2::diag(4.0, 9.0)).unwrap(), Mat2::diag(2.0, 3.0), 1e-15);
        let m = Mat2::new(2.0, 1.0, 1.0, 2.0);
        let s = sqrtm_spd2(m).unwrap();
        assert_close(s * s, m, 1e-12);
        assert_eq!(sqrtm_spd2(Mat2::ZERO).unwrap(), Mat2::ZERO);
    }

    #[test]
    fn sqrtm_rejects_indefinite_and_asymmetric() {
        assert!(matches!(sqrtm_spd2(Mat2::diag(1.0, -1.0)), Err(Error::NotSpd(_))));
        assert!(matches!(
            sqrtm_spd2(Mat2::new(1.0, 0.5, 0.0, 1.0)),
            Err(Error::NotSpd(_))
        ));
    }

    #[test]
    fn sqrtm_clips_roundoff_negative_eigenvalue() {
        let m = Mat2::new(1.0, 1.0, 1.0, 1.0 - 1e-15);
        let s = sqrtm_spd2(m).unwrap();
        assert_close(s * s, m, 1e-12);
    }

    #[test]
    fn eig2_examples() {
        match eig2(coupled_q(-1.0, -1.0, 1.0)) {
            Eigenvalues::Real(hi, lo) => {
                assert!((hi + 1.0).abs() < 1e-15);
                assert!((lo + 3.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(eig2(Mat2::diag(2.0, 5.0)), Eigenvalues::Real(5.0, 2.0));
        assert!(matches!(
            eig2(Mat2::new(0.0, -1.0, 1.0, 0.0)),
            Eigenvalues::Complex { .. }
        ));
    }

    #[test]
    fn lyapunov_examples() {
        let s = solve_lyapunov2(-Mat2::IDENTITY, Mat2::IDENTITY).unwrap();
        assert_close(s, Mat2::IDENTITY, 1e-15);

        let s = solve_lyapunov2(coupled_q(-1.0, -1.0, 1.0), Mat2::IDENTITY).unwrap();
        assert_close(s, Mat2::new(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0), 1e-14);

        let s = solve_lyapunov2(Mat2::diag(-2.0, -5.0), Mat2::diag(3.0, 7.0)).unwrap();
        assert_close(s, Mat2::diag(1.5, 7.0 / 5.0), 1e-15);
    }

    #[test]
    fn lyapunov_rejects_non_hurwitz() {
        let err = solve_lyapunov2(Mat2::diag(-1.0, 0.0), Mat2::IDENTITY).unwrap_err();
        assert!(matches!(err, Error::NotHurwitz { .. }));
        let err = solve_lyapunov2(Mat2::new(0.0, -1.0, 1.0, 0.0), Mat2::IDENTITY).unwrap_err();
        assert!(matches!(err, Error::NotHurwitz { .. }));
    }

    fn entry() -> impl Strategy<Value = f64> {
        -3.0f64..3.0
    }

    fn mat() -> impl Strategy<Value = Mat2> {
        (entry(), entry(), entry(), entry()).prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
    }

    fn hurwitz() -> impl Strategy<Value = Mat2> {
        mat().prop_filter("Hurwitz", |m| eig2(*m).max_real_part() < -0.05)
    }

    fn psd() -> impl Strategy<Value = Mat2> {
        mat().prop_map(|b| b * b.transpose())
    }

    proptest! {
        #[test]
        fn expm_inverse_pair(m in mat()) {
            let prod = expm2(m) * expm2(-m);
            prop_assert!((prod - Mat2::IDENTITY).max_abs() <= 1e-12);
        }

        #[test]
        fn expm_matches_reference(m in mat()) {
            let e = expm2(m);
            let r = expm_reference(m);
            prop_assert!((e - r).max_abs() <= 1e-12 * r.max_abs().max(1.0));
        }

        #[test]
        fn expm_symmetric_stays_symmetric(a in entry(), b in entry(), d in entry()) {
            let e = expm2(Mat2::new(a, b, b, d));
            prop_assert!((e.a12 - e.a21).abs() <= 1e-13 * e.max_abs().max(1.0));
        }

        #[test]
        fn expm_liouville(m in mat()) {
            let det = expm2(m).det();
            let expected = m.trace().exp();
            prop_assert!((det - expected).abs() <= 1e-12 * expected);
        }

        #[test]
        fn sqrtm_squares_back(m in psd()) {
            let s = sqrtm_spd2(m).unwrap();
            prop_assert!((s * s - m).max_abs() <= 1e-12 * m.max_abs().max(1.0));
            if let Eigenvalues::Real(_, lo) = eig2(s) {
                prop_assert!(lo >= -1e-12 * s.max_abs().max(1.0));
            }
        }

        #[test]
        fn lyapunov_residual(c in hurwitz(), d in psd()) {
            let s = solve_lyapunov2(c, d).unwrap();
            prop_assert_eq!(s.a12, s.a21);
            let residual = (d * 2.0 + c * s + s * c.transpose()).norm_inf();
            let scale = c.norm_inf() * s.norm_inf() + d.norm_inf();
            prop_assert!(residual <= 1e-12 * scale, "residual {residual:e} scale {scale:e}");
        }

        #[test]
        fn eig2_of_coupled_drift_matches_closed_form(
            a in -5.0f64..-0.1, gap in 0.0f64..5.0, k in 0.01f64..10.0
        ) {
            let d = a - gap;
            let root = ((a - d) * (a - d) + 4.0 * k * k).sqrt();
            let plus = 0.5 * (a + d - 2.0 * k + root);
            let minus = 0.5 * (a + d - 2.0 * k - root);
            match eig2(coupled_q(a, d, k)) {
                Eigenvalues::Real(hi, lo) => {
                    prop_assert!((hi - plus).abs() <= 1e-13 * plus.abs().max(1.0));
                    prop_assert!((lo - minus).abs() <= 1e-13 * minus.abs().max(1.0));
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}
