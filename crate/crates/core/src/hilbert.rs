//! Hilbert bases of `Hol(v) = { k in N^r : <k, v> >= 0 }`.
//!
//! Two independent engines are provided:
//!
//! * [`hilbert_basis_oracle`] enumerates the box `[0, B]^r`, with
//!   `B = max(1, max_j |v_j|)`, and keeps the irreducible members. The box is
//!   complete because `k -> (k, <k, v>)` identifies `Hol(v)` with the monoid of
//!   nonnegative solutions of `sum_j v_j k_j - s = 0`; irreducibles become
//!   minimal solutions, and a coordinate of a minimal solution of a single
//!   homogeneous equation never exceeds the largest coefficient on the other
//!   side of the equation.
//! * [`hilbert_basis_frontier`] runs a completion search for the minimal
//!   solutions of that slack equation directly, growing candidates one unit
//!   step at a time in the direction that moves the defect towards zero.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hnf;
use crate::model::{ord, ExponentVector, OrderVector};

/// Largest box the oracle engine is willing to enumerate.
pub const ORACLE_BOX_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Oracle,
    Frontier,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Oracle => write!(f, "oracle"),
            Engine::Frontier => write!(f, "frontier"),
        }
    }
}

/// The irreducible elements of `Hol(v)`, lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    orders: OrderVector,
    elements: Vec<ExponentVector>,
    engine: Engine,
}

impl HilbertBasis {
    fn from_unsorted(orders: OrderVector, elements: Vec<ExponentVector>, engine: Engine) -> Self {
        let elements: Vec<_> = elements
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let bound = orders.box_bound();
        if bound > 1 {
            for e in &elements {
                if e.entries().contains(&bound) {
                    log::debug!("basis element {e} of {orders} sits on the box boundary {bound}");
                }
            }
        }
        HilbertBasis {
            orders,
            elements,
            engine,
        }
    }

    pub fn orders(&self) -> &OrderVector {
        &self.orders
    }

    pub fn elements(&self) -> &[ExponentVector] {
        &self.elements
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.orders.rank()
    }

    /// Set equality, ignoring which engine produced either side.
    pub fn same_elements(&self, other: &HilbertBasis) -> bool {
        self.elements == other.elements
    }

    pub fn contains(&self, k: &ExponentVector) -> bool {
        self.elements.binary_search(k).is_ok()
    }
}

fn require_member(k: &ExponentVector, v: &OrderVector) -> Result<i64> {
    let o = ord(k, v)?;
    if o < 0 {
        return Err(Error::NotInHol(k.entries().to_vec()));
    }
    Ok(o)
}

/// Calls `f` on every vector `a` with `0 <= a <= upper` componentwise, in lex order.
fn for_each_below(upper: &[u64], mut f: impl FnMut(&[u64]) -> bool) {
    let mut a = vec![0u64; upper.len()];
    loop {
        if !f(&a) {
            return;
        }
        let mut i = upper.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if a[i] < upper[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

/// Whether `k` admits no splitting `k = a + (k - a)` into two nonzero holomorphic parts.
pub fn is_irreducible(k: &ExponentVector, v: &OrderVector) -> Result<bool> {
    let total = require_member(k, v)?;
    if k.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut irreducible = true;
    let mut failure = None;
    for_each_below(k.entries(), |a| {
        let a = ExponentVector::new(a.to_vec());
        if a.is_zero() || &a == k {
            return true;
        }
        match ord(&a, v) {
            Ok(o) if o >= 0 && total - o >= 0 => {
                irreducible = false;
                false
            }
            Ok(_) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(irreducible),
    }
}

/// Brute-force engine: every irreducible member of the box `[0, B]^r`.
pub fn hilbert_basis_oracle(v: &OrderVector) -> Result<HilbertBasis> {
    let r = v.rank();
    let bound = v.box_bound();
    let side = bound + 1;
    let size = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(side));
    let size = match size {
        Some(s) if s <= ORACLE_BOX_LIMIT => s as usize,
        _ => {
            return Err(Error::CapExceeded {
                requested: (side as u128).saturating_pow(r as u32),
                cap: ORACLE_BOX_LIMIT,
            })
        }
    };

    // Mixed-radix index, first coordinate most significant.
    let mut weights = vec![1usize; r];
    for i in (0..r.saturating_sub(1)).rev() {
        weights[i] = weights[i + 1] * side as usize;
    }
    let index_of =
        |a: &[u64]| -> usize { a.iter().zip(&weights).map(|(x, w)| *x as usize * w).sum() };

    let mut orders = vec![0i64; size];
    let mut points = Vec::with_capacity(size);
    let upper = vec![bound; r];
    let mut failure = None;
    for_each_below(&upper, |a| {
        let e = ExponentVector::new(a.to_vec());
        match ord(&e, v) {
            Ok(o) => {
                orders[points.len()] = o;
                points.push(e);
                true
            }
            Err(err) => {
                failure = Some(err);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let mut elements = Vec::new();
    for (idx, k) in points.iter().enumerate() {
        let total = orders[idx];
        if total < 0 || k.is_zero() {
            continue;
        }
        let mut irreducible = true;
        for_each_below(k.entries(), |a| {
            let j = index_of(a);
            if j != 0 && j != idx && orders[j] >= 0 && total - orders[j] >= 0 {
                irreducible = false;
            }
            irreducible
        });
        if irreducible {
            elements.push(k.clone());
        }
    }

    // Every holomorphic point of the box must be a sum of basis elements.
    let mut generated = vec![false; size];
    generated[0] = true;
    for (idx, k) in points.iter().enumerate() {
        if idx == 0 || orders[idx] < 0 {
            continue;
        }
        generated[idx] = elements.iter().any(|h| {
            k.checked_sub(h)
                .ok()
                .flatten()
                .is_some_and(|rest| generated[index_of(rest.entries())])
        });
        if !generated[idx] {
            return Err(Error::Invariant(format!(
                "oracle basis for {v} does not generate {k}"
            )));
        }
    }

    Ok(HilbertBasis::from_unsorted(
        v.clone(),
        elements,
        Engine::Oracle,
    ))
}

/// Completion engine over the slack equation `sum_j v_j k_j - s = 0`.
pub fn hilbert_basis_frontier(v: &OrderVector) -> Result<HilbertBasis> {
    let r = v.rank();
    let mut elements: Vec<ExponentVector> = Vec::new();

    // Zero coordinates contribute exactly their unit vectors.
    let mut active = Vec::new();
    for (j, &vj) in v.entries().iter().enumerate() {
        if vj == 0 {
            elements.push(ExponentVector::unit(r, j));
        } else {
            active.push(j);
        }
    }

    // Coefficients of the reduced equation; the last variable is the slack.
    let mut coeffs: Vec<i64> = active.iter().map(|&j| v.entries()[j]).collect();
    coeffs.push(-1);
    let n = coeffs.len();

    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut frontier: BTreeSet<(Vec<u64>, i64)> = (0..n)
        .map(|i| {
            let mut x = vec![0u64; n];
            x[i] = 1;
            (x, coeffs[i])
        })
        .collect();

    while !frontier.is_empty() {
        let mut next: HashSet<(Vec<u64>, i64)> = HashSet::new();
        for (x, defect) in &frontier {
            if *defect == 0 && !dominates_any(x, &solutions) {
                solutions.push(x.clone());
            }
        }
        for (x, defect) in frontier {
            if defect == 0 {
                continue;
            }
            for (i, &c) in coeffs.iter().enumerate() {
                // Only steps that push the defect towards zero.
                if (c > 0) == (defect > 0) {
                    continue;
                }
                let mut y = x.clone();
                y[i] = y[i].checked_add(1).ok_or(Error::ArithmeticOverflow)?;
                if dominates_any(&y, &solutions) {
                    continue;
                }
                let d = defect.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
                next.insert((y, d));
            }
        }
        frontier = next.into_iter().collect();
    }

    for sol in solutions {
        let mut k = vec![0u64; r];
        for (pos, &j) in active.iter().enumerate() {
            k[j] = sol[pos];
        }
        elements.push(ExponentVector::new(k));
    }
    Ok(HilbertBasis::from_unsorted(
        v.clone(),
        elements,
        Engine::Frontier,
    ))
}

fn dominates_any(x: &[u64], found: &[Vec<u64>]) -> bool {
    found.iter().any(|s| s.iter().zip(x).all(|(a, b)| a <= b))
}

pub fn hilbert_basis(v: &OrderVector, engine: Engine) -> Result<HilbertBasis> {
    match engine {
        Engine::Oracle => hilbert_basis_oracle(v),
        Engine::Frontier => hilbert_basis_frontier(v),
    }
}

/// Number of factorizations of an element over a basis, capped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationCount {
    pub element: ExponentVector,
    pub count: u64,
    /// Up to two coefficient vectors, indexed like the basis elements.
    pub witnesses: Vec<Vec<u64>>,
}

/// Counts coefficient vectors `c` with `sum_h c_h * h = k`, stopping once `cap` is reached.
pub fn count_factorizations(
    k: &ExponentVector,
    basis: &HilbertBasis,
    cap: u64,
) -> Result<FactorizationCount> {
    require_member(k, basis.orders())?;
    let mut state = Search {
        basis: basis.elements(),
        cap: cap.max(1),
        count: 0,
        witnesses: Vec::new(),
        coeffs: vec![0; basis.len()],
    };
    state.descend(0, k.entries().to_vec());
    Ok(FactorizationCount {
        element: k.clone(),
        count: state.count,
        witnesses: state.witnesses,
    })
}

struct Search<'a> {
    basis: &'a [ExponentVector],
    cap: u64,
    count: u64,
    witnesses: Vec<Vec<u64>>,
    coeffs: Vec<u64>,
}

impl Search<'_> {
    fn descend(&mut self, idx: usize, remaining: Vec<u64>) {
        if self.count >= self.cap {
            return;
        }
        if remaining.iter().all(|&x| x == 0) {
            self.count += 1;
            if self.witnesses.len() < 2 {
                self.witnesses.push(self.coeffs.clone());
            }
            return;
        }
        if idx == self.basis.len() {
            return;
        }
        let h = self.basis[idx].entries();
        let max_mult = h
            .iter()
            .zip(&remaining)
            .filter(|(hj, _)| **hj > 0)
            .map(|(hj, rj)| rj / hj)
            .min()
            .unwrap_or(0);
        let mut rest = remaining;
        for c in 0..=max_mult {
            self.coeffs[idx] = c;
            self.descend(idx + 1, rest.clone());
            if c < max_mult {
                for (x, hj) in rest.iter_mut().zip(h) {
                    *x -= hj;
                }
            }
        }
        self.coeffs[idx] = 0;
    }
}

fn basis_rows(basis: &HilbertBasis) -> Result<Vec<Vec<i64>>> {
    basis
        .elements()
        .iter()
        .map(|e| {
            e.entries()
                .iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::ArithmeticOverflow))
                .collect()
        })
        .collect()
}

/// Whether the basis spans `Z^r` as a group (unimodular Hermite form).
pub fn lattice_is_full(basis: &HilbertBasis, r: usize) -> Result<bool> {
    hnf::spans_full_lattice(&basis_rows(basis)?, r)
}

/// Unique factorization holds exactly when the basis has `r` elements.
pub fn is_factorial(basis: &HilbertBasis, r: usize) -> bool {
    basis.len() == r
}

/// An element with at least two factorizations, built from an integer
/// relation `sum_h lambda_h h = 0` as `sum_{lambda_h > 0} lambda_h h`.
///
/// Returns `None` when `|basis| <= r`.
pub fn nonuniqueness_witness(basis: &HilbertBasis, r: usize) -> Result<Option<ExponentVector>> {
    if basis.len() <= r {
        return Ok(None);
    }
    let form = hnf::hermite_normal_form(&basis_rows(basis)?)?;
    let mut best: Option<(u128, ExponentVector)> = None;
    for relation in form.kernel() {
        let mut w = vec![0u128; r];
        for (lambda, h) in relation.iter().zip(basis.elements()) {
            if *lambda > 0 {
                for (wj, &hj) in w.iter_mut().zip(h.entries()) {
                    *wj = (*lambda as u128)
                        .checked_mul(hj as u128)
                        .and_then(|p| wj.checked_add(p))
                        .ok_or(Error::ArithmeticOverflow)?;
                }
            }
        }
        let w = w
            .into_iter()
            .map(|x| u64::try_from(x).map_err(|_| Error::ArithmeticOverflow))
            .collect::<Result<Vec<_>>>()?;
        let size: u128 = w.iter().map(|&x| x as u128).sum();
        if size == 0 {
            continue;
        }
        let w = ExponentVector::new(w);
        if best.as_ref().is_none_or(|(s, b)| (size, &w) < (*s, b)) {
            best = Some((size, w));
        }
    }
    best.map(|(_, w)| Some(w)).ok_or(Error::NoRelation)
}

/// The elements `m_j e_pivot + e_j` with `m_j = max(0, ceil(-v_j / v_pivot))`.
pub fn adjoined_irreducibles(v: &OrderVector, pivot: usize) -> Result<Vec<ExponentVector>> {
    let r = v.rank();
    if pivot >= r {
        return Err(Error::IndexOutOfRange {
            index: pivot,
            rank: r,
        });
    }
    let vk = v.entries()[pivot];
    if vk <= 0 {
        return Err(Error::NonpositivePivot {
            index: pivot,
            order: vk,
        });
    }
    let mut out = Vec::with_capacity(r);
    for (j, &vj) in v.entries().iter().enumerate() {
        let m = if vj >= 0 {
            0
        } else {
            (-vj as u64).div_ceil(vk as u64)
        };
        let mut e = ExponentVector::unit(r, j);
        if j != pivot {
            let mut entries = e.into_entries();
            entries[pivot] = m;
            e = ExponentVector::new(entries);
        }
        if !is_irreducible(&e, v)? {
            return Err(Error::Invariant(format!(
                "adjoined element {e} is reducible for {v}"
            )));
        }
        out.push(e);
    }
    Ok(out)
}
