use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Integers that fit in `u64` serialize as JSON numbers, larger ones as
/// decimal strings.
pub fn biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.collect_str(x),
    }
}

pub fn opt_biguint<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => biguint(v, s),
        None => s.serialize_none(),
    }
}

pub fn bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

/// Vertex indices serialize 1-based, matching the command-line convention.
pub fn one_based<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x + 1))
}

/// `{"num": .., "den": ..}`.
pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    struct Int<'a>(&'a BigInt);
    impl serde::Serialize for Int<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            bigint(self.0, s)
        }
    }
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &Int(x.numer()))?;
    st.serialize_field("den", &Int(x.denom()))?;
    st.end()
}

pub fn opt_rational<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => rational(v, s),
        None => s.serialize_none(),
    }
}

pub fn opt_bigint<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => bigint(v, s),
        None => s.serialize_none(),
    }
}
