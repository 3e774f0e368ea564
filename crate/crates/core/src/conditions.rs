//! Decision procedures for the holomorphy criteria.
//!
//! Four conditions on an order vector `v` are decided here:
//!
//! * `i`: every generator is holomorphic (`v_j >= 0` for all `j`);
//! * `ii`: `Hol(v)` is factorial, and for every ordered pair `k != l` some
//!   holomorphic element is divisible by `f_k` but not by `f_l`;
//! * `iii`: `Hol(v)` is factorial, and for some `1 <= m < r` every `m`-subset
//!   `M` carries strictly positive exponents whose product is holomorphic;
//! * `ii'`: `Hol(v)` is factorial, and the product of any `r - 1` distinct
//!   generators is holomorphic.
//!
//! The pair and subset predicates have closed forms, used on the fast path.
//! The [`search`] module decides the same predicates by bounded enumeration
//! and serves as the independent check on those closed forms.
//!
//! Indices in the Rust API are 0-based. Indices stored in a
//! [`ConditionReport`] are 1-based, matching `f_1, ..., f_r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_basis_frontier, hilbert_basis_oracle, is_factorial, HilbertBasis};
use crate::model::{is_admissible, Admissibility, ExponentVector, Instance, OrderVector};

/// A nonempty, strictly increasing set of 0-based coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSelector(Vec<usize>);

impl SubsetSelector {
    pub fn new(indices: Vec<usize>, rank: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidSubset("empty subset".into()));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= rank) {
            return Err(Error::InvalidSubset(format!(
                "index {i} out of range for rank {rank}"
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(SubsetSelector(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

/// All `size`-subsets of `0..rank` in lexicographic order.
pub fn subsets(rank: usize, size: usize) -> Vec<SubsetSelector> {
    let mut out = Vec::new();
    if size == 0 || size > rank {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(SubsetSelector(idx.clone()));
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < rank - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn check_pair(v: &OrderVector, k: usize, l: usize) -> Result<()> {
    let rank = v.rank();
    for index in [k, l] {
        if index >= rank {
            return Err(Error::IndexOutOfRange { index, rank });
        }
    }
    if k == l {
        return Err(Error::EqualIndices(k));
    }
    Ok(())
}

fn ceil_div(num: i64, den: i64) -> u64 {
    debug_assert!(num >= 0 && den > 0);
    (num as u64).div_ceil(den as u64)
}

/// Condition `i`: no generator has a pole.
pub fn cond_i(v: &OrderVector) -> bool {
    v.entries().iter().all(|&x| x >= 0)
}

/// A holomorphic element divisible by `f_k` and not by `f_l`, if one exists.
///
/// Either `e_k` works (`v_k >= 0`), or the pole of `f_k` is cancelled by
/// `m` copies of some `f_p` with `p != l` and `v_p > 0`.
pub fn cond_ii_pair(v: &OrderVector, k: usize, l: usize) -> Result<Option<ExponentVector>> {
    check_pair(v, k, l)?;
    let o = v.entries();
    let r = v.rank();
    if o[k] >= 0 {
        return Ok(Some(ExponentVector::unit(r, k)));
    }
    let Some(p) = (0..r).find(|&p| p != l && o[p] > 0) else {
        return Ok(None);
    };
    let mut a = vec![0u64; r];
    a[k] = 1;
    a[p] = ceil_div(-o[k], o[p]);
    Ok(Some(ExponentVector::new(a)))
}

/// One row of the pair table: 1-based `(k, l)` and the witness, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub k: usize,
    pub l: usize,
    pub witness: Option<ExponentVector>,
}

/// The complete table over all ordered pairs `k != l`.
pub fn pair_table(v: &OrderVector) -> Result<Vec<PairEntry>> {
    let r = v.rank();
    let mut table = Vec::with_capacity(r * r.saturating_sub(1));
    for k in 0..r {
        for l in 0..r {
            if k != l {
                table.push(PairEntry {
                    k: k + 1,
                    l: l + 1,
                    witness: cond_ii_pair(v, k, l)?,
                });
            }
        }
    }
    Ok(table)
}

/// Condition `ii`.
pub fn cond_ii(v: &OrderVector, basis: &HilbertBasis) -> Result<bool> {
    Ok(is_factorial(basis, v.rank()) && pair_table(v)?.iter().all(|p| p.witness.is_some()))
}

/// Strictly positive exponents on `M` whose product is holomorphic, if any.
///
/// Exists iff `M` meets a positive order or is entirely zero. The witness sets
/// every exponent to 1 except at the first positive index `p`, which absorbs
/// all the poles on `M`.
pub fn cond_iii_subset(v: &OrderVector, subset: &SubsetSelector) -> Result<Option<Vec<u64>>> {
    let o = v.entries();
    if let Some(&i) = subset.indices().iter().find(|&&i| i >= v.rank()) {
        return Err(Error::InvalidSubset(format!(
            "index {i} out of range for rank {}",
            v.rank()
        )));
    }
    if subset.indices().iter().all(|&j| o[j] == 0) {
        return Ok(Some(vec![1; subset.len()]));
    }
    let Some(p) = subset.indices().iter().copied().find(|&j| o[j] > 0) else {
        return Ok(None);
    };
    let poles: i64 = subset
        .indices()
        .iter()
        .filter(|&&j| j != p)
        .map(|&j| (-o[j]).max(0))
        .try_fold(0i64, |acc, x| acc.checked_add(x))
        .ok_or(Error::ArithmeticOverflow)?;
    let kp = ceil_div(poles, o[p]).max(1);
    Ok(Some(
        subset
            .indices()
            .iter()
            .map(|&j| if j == p { kp } else { 1 })
            .collect(),
    ))
}

/// Smallest `m` in `[1, r - 1]` for which every `m`-subset passes
/// [`cond_iii_subset`], from the counts of negative and zero orders.
pub fn cond_iii_quantifier(v: &OrderVector) -> Option<usize> {
    let r = v.rank();
    if r < 2 {
        return None;
    }
    let negative = v.entries().iter().filter(|&&x| x < 0).count();
    let zero = v.entries().iter().filter(|&&x| x == 0).count();
    if negative == 0 {
        Some(1)
    } else if negative + zero + 2 <= r {
        Some(negative + zero + 1)
    } else {
        None
    }
}

/// Condition `iii`, with the smallest working `m`.
pub fn cond_iii(v: &OrderVector, basis: &HilbertBasis) -> (bool, Option<usize>) {
    let m = cond_iii_quantifier(v);
    (is_factorial(basis, v.rank()) && m.is_some(), m)
}

/// Condition `ii'`, with the first `(r-1)`-subset whose orders sum to a negative number.
pub fn cond_ii_prime(
    v: &OrderVector,
    basis: &HilbertBasis,
) -> Result<(bool, Option<SubsetSelector>)> {
    let r = v.rank();
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let failing = subsets(r, r - 1)
        .into_iter()
        .find(|s| s.indices().iter().map(|&i| v.entries()[i]).sum::<i64>() < 0);
    Ok((is_factorial(basis, r) && failing.is_none(), failing))
}

/// Bounded-enumeration deciders for the pair and subset predicates.
pub mod search {
    use super::*;
    use crate::model::ord;

    /// Side of the search box: `r * max(1, max_j |v_j|) + 1`.
    pub fn box_side(v: &OrderVector) -> u64 {
        v.rank() as u64 * v.box_bound() + 1
    }

    fn odometer(
        len: usize,
        lo: u64,
        hi: u64,
        mut f: impl FnMut(&[u64]) -> Result<bool>,
    ) -> Result<()> {
        let mut x = vec![lo; len];
        loop {
            if !f(&x)? {
                return Ok(());
            }
            let mut i = len;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if x[i] < hi {
                    x[i] += 1;
                    break;
                }
                x[i] = lo;
            }
        }
    }

    /// First (lex) `a` in the box with `a_k >= 1`, `a_l = 0` and `ord(a) >= 0`.
    pub fn cond_ii_pair_search(
        v: &OrderVector,
        k: usize,
        l: usize,
    ) -> Result<Option<ExponentVector>> {
        check_pair(v, k, l)?;
        let side = box_side(v);
        let mut found = None;
        odometer(v.rank(), 0, side, |a| {
            if a[k] >= 1 && a[l] == 0 {
                let e = ExponentVector::new(a.to_vec());
                if ord(&e, v)? >= 0 {
                    found = Some(e);
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        Ok(found)
    }

    /// First (lex) positive exponent list on `M` in `[1, side]^|M|` with holomorphic product.
    pub fn cond_iii_subset_search(
        v: &OrderVector,
        subset: &SubsetSelector,
    ) -> Result<Option<Vec<u64>>> {
        let side = box_side(v);
        let o: Vec<i64> = subset.indices().iter().map(|&j| v.entries()[j]).collect();
        let restricted = OrderVector::new(o)?;
        let mut found = None;
        odometer(subset.len(), 1, side, |x| {
            if ord(&ExponentVector::new(x.to_vec()), &restricted)? >= 0 {
                found = Some(x.to_vec());
                return Ok(false);
            }
            Ok(true)
        })?;
        Ok(found)
    }

    /// Smallest `m` in `[1, r - 1]` such that every `m`-subset has a search witness.
    pub fn cond_iii_quantifier_search(v: &OrderVector) -> Result<Option<usize>> {
        for m in 1..v.rank() {
            let mut all = true;
            for s in subsets(v.rank(), m) {
                if cond_iii_subset_search(v, &s)?.is_none() {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub size: usize,
    pub elements: Vec<ExponentVector>,
    pub engine_agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub ok: bool,
    pub pairs: Vec<PairEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetVerdict {
    pub ok: bool,
    pub m: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeVerdict {
    pub ok: bool,
    /// 1-based.
    pub failing_subset: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdicts {
    pub i: bool,
    pub ii: PairVerdict,
    pub iii: SubsetVerdict,
    pub ii_prime: PrimeVerdict,
}

/// Everything decided about one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub instance: Instance,
    pub admissible: Admissibility,
    pub hilbert: HilbertSummary,
    pub conditions: ConditionVerdicts,
    pub factorial: bool,
    /// Present iff the instance is admissible and `r >= 2`.
    pub equivalence_ok: Option<bool>,
}

impl ConditionReport {
    /// Whether every checked assertion holds.
    pub fn passes(&self) -> bool {
        self.equivalence_ok != Some(false)
    }
}

/// Computes the basis with both engines and decides every condition.
pub fn check_instance(inst: &Instance) -> Result<ConditionReport> {
    check_instance_inner(inst).map_err(|e| Error::Instance {
        orders: inst.orders().entries().to_vec(),
        source: Box::new(e),
    })
}

fn check_instance_inner(inst: &Instance) -> Result<ConditionReport> {
    let v = inst.orders();
    let r = inst.rank();
    let admissible = is_admissible(inst);
    let oracle = hilbert_basis_oracle(v)?;
    let frontier = hilbert_basis_frontier(v)?;
    if !oracle.same_elements(&frontier) {
        return Err(Error::EngineMismatch {
            orders: v.entries().to_vec(),
        });
    }
    let basis = frontier;
    let factorial = is_factorial(&basis, r);

    let i = cond_i(v);
    if i && !factorial {
        return Err(Error::Invariant(format!(
            "{v}: condition i holds but basis has {} elements",
            basis.len()
        )));
    }
    let pairs = pair_table(v)?;
    let ii = factorial && pairs.iter().all(|p| p.witness.is_some());
    let (iii, m) = cond_iii(v, &basis);
    let (ii_prime, failing) = if r >= 2 {
        let (ok, failing) = cond_ii_prime(v, &basis)?;
        (ok, failing.map(|s| s.one_based()))
    } else {
        (false, None)
    };

    let equivalence_ok =
        (admissible.ok && r >= 2).then_some(i == ii && ii == iii && iii == ii_prime);

    Ok(ConditionReport {
        instance: inst.clone(),
        admissible,
        hilbert: HilbertSummary {
            size: basis.len(),
            elements: basis.elements().to_vec(),
            engine_agreement: true,
        },
        conditions: ConditionVerdicts {
            i,
            ii: PairVerdict { ok: ii, pairs },
            iii: SubsetVerdict { ok: iii, m },
            ii_prime: PrimeVerdict {
                ok: ii_prime,
                failing_subset: failing,
            },
        },
        factorial,
        equivalence_ok,
    })
}
