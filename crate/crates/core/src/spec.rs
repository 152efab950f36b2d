//! Ring spec grammar: `zmod:<n>`, `gauss:<n>`, `mat:<k>:<spec>`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::finring::{make_gaussian_capped, make_matrix_ring, make_zmod_capped, RingTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u32),
    Gauss(u32),
    Mat(usize, Box<RingSpec>),
}

impl RingSpec {
    /// Builds the ring, rejecting any intermediate ring above `cap` elements.
    pub fn build(&self, cap: usize) -> Result<Arc<RingTable>> {
        match self {
            RingSpec::Zmod(n) => Ok(Arc::new(make_zmod_capped(*n, cap)?)),
            RingSpec::Gauss(n) => Ok(Arc::new(make_gaussian_capped(*n, cap)?)),
            RingSpec::Mat(k, inner) => {
                let base = inner.build(cap)?;
                Ok(make_matrix_ring(&base, *k, cap)?.ring().clone())
            }
        }
    }
}

fn positive<T: FromStr + PartialEq + Default>(s: &str, whole: &str) -> Result<T> {
    let bad = || Error::InvalidSpec(String::from(whole));
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let v: T = s.parse().map_err(|_| bad())?;
    if v == T::default() {
        return Err(bad());
    }
    Ok(v)
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(String::from(s));
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        match head {
            "zmod" => Ok(RingSpec::Zmod(positive(rest, s)?)),
            "gauss" => Ok(RingSpec::Gauss(positive(rest, s)?)),
            "mat" => {
                let (k, inner) = rest.split_once(':').ok_or_else(bad)?;
                let inner: RingSpec = inner.parse().map_err(|_| bad())?;
                Ok(RingSpec::Mat(positive(k, s)?, Box::new(inner)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "zmod:{n}"),
            RingSpec::Gauss(n) => write!(f, "gauss:{n}"),
            RingSpec::Mat(k, inner) => write!(f, "mat:{k}:{inner}"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::DEFAULT_SIZE_CAP;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn parses_nested_specs() {
        let s: RingSpec = "mat:2:gauss:3".parse().unwrap();
        assert_eq!(s, RingSpec::Mat(2, Box::new(RingSpec::Gauss(3))));
        let r = s.build(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(r.size(), 6561);
        assert_eq!(r.label(), "mat:2:gauss:3");
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["", "zmod", "zmod:", "zmod:0", "zmod:-1", "zmod:+3", "poly:2", "mat:2", "mat:0:zmod:2", "mat:2:zmod:x", "zmod:3:1", "gauss:3 "] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn build_respects_cap() {
        let s: RingSpec = "mat:2:zmod:4".parse().unwrap();
        assert!(matches!(s.build(255), Err(Error::SizeCapExceeded { size: 256, cap: 255 })));
    }

    fn spec_strategy() -> impl Strategy<Value = RingSpec> {
        let leaf = prop_oneof![(1u32..50).prop_map(RingSpec::Zmod), (1u32..50).prop_map(RingSpec::Gauss)];
        leaf.prop_recursive(3, 4, 1, |inner| (1usize..4, inner).prop_map(|(k, s)| RingSpec::Mat(k, Box::new(s))))
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(spec in spec_strategy()) {
            let text = spec.to_string();
            prop_assert_eq!(text.parse::<RingSpec>().unwrap(), spec);
        }
    }
}
