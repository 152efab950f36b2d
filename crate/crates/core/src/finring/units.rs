use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, RingTable};
use crate::error::{Error, Result};

/// Which multiplicative group a construction draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Pool {
    Units,
    Unitaries,
}

impl Pool {
    pub fn elements(self, ring: &RingTable) -> Result<Vec<Elem>> {
        match self {
            Pool::Units => Ok(units(ring)),
            Pool::Unitaries => unitaries(ring),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pool::Units => "units",
            Pool::Unitaries => "unitaries",
        }
    }
}

/// Elements with a two-sided inverse, ascending.
pub fn units(ring: &RingTable) -> Vec<Elem> {
    let one = ring.one();
    ring.elements()
        .filter(|&x| {
            ring.elements()
                .any(|y| ring.mul(x, y) == one && ring.mul(y, x) == one)
        })
        .collect()
}

/// Elements `u` with `u u* = u* u = 1`, ascending.
pub fn unitaries(ring: &RingTable) -> Result<Vec<Elem>> {
    let star = ring.require_star()?;
    let one = ring.one();
    Ok(ring
        .elements()
        .filter(|&u| {
            let us = star[u as usize];
            ring.mul(u, us) == one && ring.mul(us, u) == one
        })
        .collect())
}

/// Shortest way of writing `x` as a sum of at most `kmax` pool elements.
///
/// Breadth-first over partial sums: level `m` holds the sums of exactly `m`
/// pool elements not reachable with fewer. Frontiers are walked in ascending
/// order and pool elements ascending, so the first discovered path wins.
pub fn sum_of_units_decompose(ring: &RingTable, x: Elem, kmax: usize, pool: Pool) -> Result<Option<Vec<Elem>>> {
    if kmax == 0 {
        return Err(Error::InvalidParameter("kmax must be at least 1".into()));
    }
    let pool = pool.elements(ring)?;
    // parent[s] = (previous partial sum, last summand)
    let mut parent: Vec<Option<(Option<Elem>, Elem)>> = vec![None; ring.size()];
    let mut frontier = Vec::new();
    for &u in &pool {
        if parent[u as usize].is_none() {
            parent[u as usize] = Some((None, u));
            frontier.push(u);
        }
    }
    let mut level = 1;
    while parent[x as usize].is_none() && level < kmax && !frontier.is_empty() {
        frontier.sort_unstable();
        let mut next = Vec::new();
        for &s in &frontier {
            for &u in &pool {
                let t = ring.add(s, u);
                if parent[t as usize].is_none() {
                    parent[t as usize] = Some((Some(s), u));
                    next.push(t);
                }
            }
        }
        frontier = next;
        level += 1;
    }
    let Some(mut link) = parent[x as usize] else {
        return Ok(None);
    };
    let mut summands = Vec::new();
    loop {
        summands.push(link.1);
        match link.0 {
            Some(prev) => link = parent[prev as usize].expect("broken decomposition chain"),
            None => break,
        }
    }
    summands.reverse();
    if ring.sum(summands.iter().copied()) != x {
        return Err(Error::Inconsistent("decomposition does not sum to its target".into()));
    }
    Ok(Some(summands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{make_gaussian, make_matrix_ring, make_zmod, DEFAULT_SIZE_CAP};
    use alloc::sync::Arc;

    #[test]
    fn units_of_small_rings() {
        assert_eq!(units(&make_zmod(4).unwrap()), vec![1, 3]);
        assert_eq!(units(&make_zmod(1).unwrap()), vec![0]);
        let m2z2 = make_matrix_ring(&Arc::new(make_zmod(2).unwrap()), 2, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(units(m2z2.ring()).len(), 6);
    }

    #[test]
    fn unitaries_of_small_rings() {
        let g3 = make_gaussian(3).unwrap();
        let u = unitaries(&g3).unwrap();
        assert!(u.contains(&g3.i_elem().unwrap()));
        assert_eq!(u.len(), 4);
        assert_eq!(unitaries(&make_zmod(2).unwrap()).unwrap(), vec![1]);
    }

    #[test]
    fn unitaries_need_involution() {
        let bare = RingTable::from_tables("bare", vec![0, 1, 1, 0], vec![0, 0, 0, 1], 0, 1, None, None).unwrap();
        assert!(matches!(unitaries(&bare), Err(Error::MissingInvolution(_))));
        assert!(sum_of_units_decompose(&bare, 0, 2, Pool::Unitaries).is_err());
    }

    #[test]
    fn decompositions() {
        let z2 = make_zmod(2).unwrap();
        assert_eq!(sum_of_units_decompose(&z2, 0, 2, Pool::Units).unwrap(), Some(vec![1, 1]));
        assert_eq!(sum_of_units_decompose(&z2, 0, 1, Pool::Units).unwrap(), None);
        let z4 = make_zmod(4).unwrap();
        assert_eq!(sum_of_units_decompose(&z4, 2, 2, Pool::Units).unwrap(), Some(vec![1, 1]));
        assert_eq!(sum_of_units_decompose(&z4, 3, 2, Pool::Units).unwrap(), Some(vec![3]));
        assert!(sum_of_units_decompose(&z4, 3, 0, Pool::Units).is_err());
    }

    #[test]
    fn matrix_unit_as_sum_of_two_units() {
        let v = make_matrix_ring(&Arc::new(make_zmod(2).unwrap()), 2, DEFAULT_SIZE_CAP).unwrap();
        let got = sum_of_units_decompose(v.ring(), v.unit(0, 0), 2, Pool::Units).unwrap().unwrap();
        let mut arrays: Vec<&[Elem]> = got.iter().map(|&u| v.decode(u)).collect();
        arrays.sort();
        assert_eq!(arrays, vec![&[0, 1, 1, 0][..], &[1, 1, 1, 0][..]]);
    }
}
