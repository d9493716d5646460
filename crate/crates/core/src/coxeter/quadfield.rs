//! Exact arithmetic in the biquadratic field ℚ(√2, √3).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b√2 + c√3 + e√6` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub e: BigRational,
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QuadField {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, e: BigRational) -> Self {
        QuadField { a, b, c, e }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        QuadField::new(q(num, den), BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    /// `num/den · √2`
    pub fn sqrt2(num: i64, den: i64) -> Self {
        QuadField::new(BigRational::zero(), q(num, den), BigRational::zero(), BigRational::zero())
    }

    /// `num/den · √3`
    pub fn sqrt3(num: i64, den: i64) -> Self {
        QuadField::new(BigRational::zero(), BigRational::zero(), q(num, den), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::rational(0, 1)
    }

    pub fn one() -> Self {
        Self::rational(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_rational() {
            return rat_sign(&self.a);
        }
        // write x = p + q√3 with p, q in ℚ(√2)
        let p = Sqrt2 { r: self.a.clone(), s: self.b.clone() };
        let qq = Sqrt2 { r: self.c.clone(), s: self.e.clone() };
        let sp = p.signum();
        let sq = qq.signum();
        if sp == 0 || sq == 0 || sp == sq {
            return if sp != 0 { sp } else { sq };
        }
        // opposite signs: compare p² against 3q²
        let diff = p.square().sub(&qq.square().scale(&q(3, 1)));
        if diff.signum() > 0 {
            sp
        } else {
            sq
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(QuadField::new(
                self.a.recip(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ));
        }
        // (p + q√3)⁻¹ = (p − q√3) / (p² − 3q²)
        let p = Sqrt2 { r: self.a.clone(), s: self.b.clone() };
        let qq = Sqrt2 { r: self.c.clone(), s: self.e.clone() };
        let norm = p.square().sub(&qq.square().scale(&q(3, 1)));
        let inv = norm.inverse();
        let np = p.mul(&inv);
        let nq = qq.mul(&inv);
        Some(QuadField::new(np.r, np.s, -nq.r, -nq.s))
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * 2f64.sqrt() + f(&self.c) * 3f64.sqrt() + f(&self.e) * 6f64.sqrt()
    }
}

fn rat_sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `r + s√2`
#[derive(Clone)]
struct Sqrt2 {
    r: BigRational,
    s: BigRational,
}

impl Sqrt2 {
    fn signum(&self) -> i32 {
        let sr = rat_sign(&self.r);
        let ss = rat_sign(&self.s);
        if sr == 0 || ss == 0 || sr == ss {
            return if sr != 0 { sr } else { ss };
        }
        let two = q(2, 1);
        match (&self.r * &self.r).cmp(&(&two * &self.s * &self.s)) {
            Ordering::Greater => sr,
            _ => ss,
        }
    }

    fn square(&self) -> Sqrt2 {
        self.mul(self)
    }

    fn mul(&self, o: &Sqrt2) -> Sqrt2 {
        Sqrt2 {
            r: &self.r * &o.r + q(2, 1) * &self.s * &o.s,
            s: &self.r * &o.s + &self.s * &o.r,
        }
    }

    fn scale(&self, k: &BigRational) -> Sqrt2 {
        Sqrt2 { r: &self.r * k, s: &self.s * k }
    }

    fn sub(&self, o: &Sqrt2) -> Sqrt2 {
        Sqrt2 { r: &self.r - &o.r, s: &self.s - &o.s }
    }

    fn inverse(&self) -> Sqrt2 {
        let n = &self.r * &self.r - q(2, 1) * &self.s * &self.s;
        Sqrt2 { r: &self.r / &n, s: -(&self.s / &n) }
    }
}

impl Add for &QuadField {
    type Output = QuadField;
    fn add(self, o: &QuadField) -> QuadField {
        QuadField::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.e + &o.e)
    }
}

impl Sub for &QuadField {
    type Output = QuadField;
    fn sub(self, o: &QuadField) -> QuadField {
        QuadField::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.e - &o.e)
    }
}

impl Neg for &QuadField {
    type Output = QuadField;
    fn neg(self) -> QuadField {
        QuadField::new(-&self.a, -&self.b, -&self.c, -&self.e)
    }
}

impl Mul for &QuadField {
    type Output = QuadField;
    fn mul(self, o: &QuadField) -> QuadField {
        if self.is_rational() && o.is_rational() {
            return QuadField::new(
                &self.a * &o.a,
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            );
        }
        let (a1, b1, c1, e1) = (&self.a, &self.b, &self.c, &self.e);
        let (a2, b2, c2, e2) = (&o.a, &o.b, &o.c, &o.e);
        let two = q(2, 1);
        let three = q(3, 1);
        let six = q(6, 1);
        QuadField::new(
            a1 * a2 + &two * b1 * b2 + &three * c1 * c2 + &six * e1 * e2,
            a1 * b2 + b1 * a2 + &three * (c1 * e2 + e1 * c2),
            a1 * c2 + c1 * a2 + &two * (b1 * e2 + e1 * b2),
            a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2,
        )
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (coef, sym) in [(&self.a, ""), (&self.b, "√2"), (&self.c, "√3"), (&self.e, "√6")] {
            if !coef.is_zero() {
                if sym.is_empty() {
                    parts.push(coef.to_string());
                } else if coef.is_one() {
                    parts.push(sym.to_string());
                } else {
                    parts.push(format!("{coef}{sym}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
