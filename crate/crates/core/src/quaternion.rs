//! Hamilton quaternions over `f64` and the three η-involutions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::QsError;

/// A Hamilton quaternion `w + x i + y j + z k`.
///
/// The units obey `i² = j² = k² = ijk = −1`, so multiplication is associative
/// but not commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// The imaginary unit used by the η-conjugate transpose `A^{η*} = −η A* η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaAxis {
    I,
    J,
    K,
}

impl EtaAxis {
    pub const ALL: [EtaAxis; 3] = [EtaAxis::I, EtaAxis::J, EtaAxis::K];

    /// The unit quaternion this axis names.
    pub fn unit(self) -> Quaternion {
        match self {
            EtaAxis::I => Quaternion::I,
            EtaAxis::J => Quaternion::J,
            EtaAxis::K => Quaternion::K,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EtaAxis::I => "i",
            EtaAxis::J => "j",
            EtaAxis::K => "k",
        }
    }
}

impl fmt::Display for EtaAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EtaAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "i" | "I" => Ok(EtaAxis::I),
            "j" | "J" => Ok(EtaAxis::J),
            "k" | "K" => Ok(EtaAxis::K),
            other => Err(format!("unknown eta axis `{other}` (expected i, j or k)")),
        }
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        // hypot chain avoids overflow for large components
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    /// `−η · conj(q) · η`.
    ///
    /// Expanded, this keeps the real part and the η component and negates the
    /// other two imaginary components; e.g. for η = i it maps
    /// `w + xi + yj + zk` to `w − xi + yj + zk`.
    pub fn eta_conj(self, eta: EtaAxis) -> Self {
        match eta {
            EtaAxis::I => Quaternion::new(self.w, -self.x, self.y, self.z),
            EtaAxis::J => Quaternion::new(self.w, self.x, -self.y, self.z),
            EtaAxis::K => Quaternion::new(self.w, self.x, self.y, -self.z),
        }
    }

    /// `−η · q · η`, the η-automorphism without conjugation.
    pub fn eta_transform(self, eta: EtaAxis) -> Self {
        match eta {
            EtaAxis::I => Quaternion::new(self.w, self.x, -self.y, -self.z),
            EtaAxis::J => Quaternion::new(self.w, -self.x, self.y, -self.z),
            EtaAxis::K => Quaternion::new(self.w, -self.x, -self.y, self.z),
        }
    }

    pub fn inv(self) -> Result<Self, QsError> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(QsError::ZeroDivision);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Quaternion) {
        *self = *self - r;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, r: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w)?;
        for (v, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            if v < 0.0 || (v == 0.0 && v.is_sign_negative()) {
                write!(f, "-{}{unit}", -v)?;
            } else {
                write!(f, "+{v}{unit}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion;

    fn random_q(rng: &mut ChaCha8Rng) -> Q {
        Q::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    }

    /// Hamilton's table written out independently of `Mul`: (sign, index)
    /// of e_a · e_b for the basis (1, i, j, k).
    const TABLE: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
        [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
    ];

    fn basis(idx: usize) -> Q {
        [Q::ONE, Q::I, Q::J, Q::K][idx]
    }

    #[test]
    fn multiplication_table_is_exact() {
        for a in 0..4 {
            for b in 0..4 {
                let (sign, idx) = TABLE[a][b];
                assert_eq!(basis(a) * basis(b), basis(idx).scale(sign), "e{a} * e{b}");
            }
        }
        assert_eq!(Q::I * Q::J * Q::K, Q::real(-1.0));
    }

    #[test]
    fn conjugate_pair_product() {
        assert_eq!(Q::new(1.0, 1.0, 0.0, 0.0) * Q::new(1.0, -1.0, 0.0, 0.0), Q::real(2.0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Q::ONE.conj(), Q::ONE);
        assert_eq!(Q::I.conj(), -Q::I);
        assert_eq!(Q::new(2.0, 1.0, -1.0, 3.0).conj(), Q::new(2.0, -1.0, 1.0, -3.0));
    }

    #[test]
    fn associativity_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (p, q, r) = (random_q(&mut rng), random_q(&mut rng), random_q(&mut rng));
            let d = (p * q) * r - p * (q * r);
            assert!(d.to_array().iter().all(|c| c.abs() <= 1e-12), "{d:?}");
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let (p, q) = (random_q(&mut rng), random_q(&mut rng));
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }
    }

    #[test]
    fn eta_conj_matches_definition_on_basis() {
        // brute force −η conj(e) η over the basis
        for eta in EtaAxis::ALL {
            let u = eta.unit();
            for idx in 0..4 {
                let e = basis(idx);
                let expected = -(u * e.conj() * u);
                assert_eq!(e.eta_conj(eta), expected, "eta={eta} e{idx}");
                let expected_t = -(u * e * u);
                assert_eq!(e.eta_transform(eta), expected_t, "eta={eta} e{idx}");
            }
        }
    }

    #[test]
    fn eta_conj_examples() {
        let q = Q::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.eta_conj(EtaAxis::I), Q::new(1.0, -2.0, 3.0, 4.0));
        assert_eq!(Q::J.eta_conj(EtaAxis::I), Q::J);
        assert_eq!(Q::ONE.eta_conj(EtaAxis::J), Q::ONE);
    }

    #[test]
    fn eta_conj_is_involutive_anti_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for eta in EtaAxis::ALL {
            for _ in 0..200 {
                let (p, q) = (random_q(&mut rng), random_q(&mut rng));
                assert_eq!(p.eta_conj(eta).eta_conj(eta), p);
                let d = (p * q).eta_conj(eta) - q.eta_conj(eta) * p.eta_conj(eta);
                assert!(d.norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(Q::I.inv().unwrap(), -Q::I);
        assert_eq!(Q::real(2.0).inv().unwrap(), Q::real(0.5));
        assert!(matches!(Q::ZERO.inv(), Err(QsError::ZeroDivision)));
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let q = random_q(&mut rng);
            let u = q.scale(1.0 / q.norm());
            assert!((u.inv().unwrap() - u.conj()).norm() <= 1e-14);
            assert!((u * u.inv().unwrap() - Q::ONE).norm() <= 1e-14);
            assert!((q.inv().unwrap() * q - Q::ONE).norm() <= 1e-14);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Q::new(3.0, -1.0, 0.0, 2.5).to_string(), "3-1i+0j+2.5k");
    }
}
