//! Exponent-vector model of the semigroup of Artin L-functions.
//!
//! An element `f_1^{k_1} ... f_r^{k_r}` is stored as its exponent vector `k`.
//! The order of every generator at the point of interest is an integer, so the
//! order of a product is the inner product `<k, v>` with the order vector `v`,
//! and the holomorphic elements are exactly those with `<k, v> >= 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute value accepted for a single order entry.
pub const MAX_ORDER_MAGNITUDE: i64 = i32::MAX as i64;

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// Exponents `(k_1, ..., k_r)` of an element of the free semigroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    /// The generator `f_index` (0-based).
    pub fn unit(rank: usize, index: usize) -> Self {
        let mut e = vec![0; rank];
        e[index] = 1;
        ExponentVector(e)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        check_len(self.rank(), other.rank())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ArithmeticOverflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// `self - other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Result<Option<ExponentVector>> {
        check_len(self.rank(), other.rank())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &ExponentVector) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Reorders coordinates so that entry `j` of the result is entry `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> ExponentVector {
        ExponentVector(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Orders `v_j = ord f_j` of the generators at the point of interest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OrderVector(Vec<i64>);

impl OrderVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(&bad) = entries.iter().find(|x| x.abs() > MAX_ORDER_MAGNITUDE) {
            return Err(Error::OrderOutOfRange(bad));
        }
        Ok(OrderVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `max(1, max_j |v_j|)`: bound on every coordinate of a Hilbert basis element.
    pub fn box_bound(&self) -> u64 {
        self.0
            .iter()
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn scaled(&self, c: i64) -> Result<OrderVector> {
        let entries = self
            .0
            .iter()
            .map(|x| x.checked_mul(c).ok_or(Error::ArithmeticOverflow))
            .collect::<Result<Vec<_>>>()?;
        OrderVector::new(entries)
    }

    pub fn permuted(&self, perm: &[usize]) -> OrderVector {
        OrderVector(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl TryFrom<Vec<i64>> for OrderVector {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        OrderVector::new(v)
    }
}

impl From<OrderVector> for Vec<i64> {
    fn from(v: OrderVector) -> Self {
        v.0
    }
}

impl fmt::Display for OrderVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Character degrees `d_j = chi_j(1)`; also the exponent vector of the Dedekind zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeVector {
    entries: Vec<u64>,
    group: Option<String>,
    group_order: Option<u64>,
}

impl DegreeVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(&bad) = entries.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidDegree(bad));
        }
        Ok(DegreeVector {
            entries,
            group: None,
            group_order: None,
        })
    }

    /// Attaches a group label and, optionally, the group order, checking
    /// `sum d_j^2 = |G|` and `d_j | |G|` when the order is given.
    pub fn with_group(mut self, name: Option<String>, order: Option<u64>) -> Result<Self> {
        if let Some(n) = order {
            let problems = degree_problems(&self.entries, n);
            if !problems.is_empty() {
                return Err(Error::InconsistentGroupOrder(problems.join("; ")));
            }
        }
        self.group = name;
        self.group_order = order;
        Ok(self)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn group(&self) -> Option<&str> {
        self.group.as_deref()
    }

    pub fn group_order(&self) -> Option<u64> {
        self.group_order
    }

    /// The Dedekind zeta function as an element of the semigroup.
    pub fn as_exponents(&self) -> ExponentVector {
        ExponentVector(self.entries.clone())
    }

    pub fn permuted(&self, perm: &[usize]) -> DegreeVector {
        DegreeVector {
            entries: perm.iter().map(|&p| self.entries[p]).collect(),
            group: self.group.clone(),
            group_order: self.group_order,
        }
    }
}

/// Violations of the sum-of-squares and divisibility laws, in readable form.
pub(crate) fn degree_problems(degrees: &[u64], order: u64) -> Vec<String> {
    let mut problems = Vec::new();
    for &d in degrees {
        if d == 0 {
            problems.push("degree 0 is not allowed".to_string());
        } else if !order.is_multiple_of(d) {
            problems.push(format!("{d} does not divide {order}"));
        }
    }
    let squares = degrees.iter().try_fold(0u64, |acc, &d| {
        d.checked_mul(d).and_then(|s| acc.checked_add(s))
    });
    match squares {
        Some(s) if s == order => {}
        Some(s) => problems.push(format!("sum of squares {s} \u{2260} {order}")),
        None => problems.push("sum of squares overflows".to_string()),
    }
    problems
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceFlags {
    pub require_dedekind: bool,
    pub require_trivial_nonneg: bool,
}

impl Default for InstanceFlags {
    fn default() -> Self {
        InstanceFlags {
            require_dedekind: true,
            require_trivial_nonneg: false,
        }
    }
}

/// Opaque annotations. The point `s0` is never interpreted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceLabels {
    pub group: Option<String>,
    pub group_order: Option<u64>,
    pub s0: Option<String>,
}

/// A rank, degree vector and order vector, plus admissibility flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct Instance {
    degrees: DegreeVector,
    orders: OrderVector,
    pub flags: InstanceFlags,
    pub s0: Option<String>,
}

impl Instance {
    pub fn new(degrees: DegreeVector, orders: OrderVector) -> Result<Self> {
        check_len(degrees.rank(), orders.rank())?;
        Ok(Instance {
            degrees,
            orders,
            flags: InstanceFlags::default(),
            s0: None,
        })
    }

    pub fn with_flags(mut self, flags: InstanceFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_s0(mut self, s0: Option<String>) -> Self {
        self.s0 = s0;
        self
    }

    pub fn rank(&self) -> usize {
        self.orders.rank()
    }

    pub fn degrees(&self) -> &DegreeVector {
        &self.degrees
    }

    pub fn orders(&self) -> &OrderVector {
        &self.orders
    }

    pub fn labels(&self) -> InstanceLabels {
        InstanceLabels {
            group: self.degrees.group.clone(),
            group_order: self.degrees.group_order,
            s0: self.s0.clone(),
        }
    }

    /// Simultaneous permutation of degrees and orders.
    pub fn permuted(&self, perm: &[usize]) -> Instance {
        Instance {
            degrees: self.degrees.permuted(perm),
            orders: self.orders.permuted(perm),
            flags: self.flags,
            s0: self.s0.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    r: usize,
    degrees: Vec<u64>,
    orders: Vec<i64>,
    flags: InstanceFlags,
    labels: InstanceLabels,
}

impl From<Instance> for InstanceRepr {
    fn from(inst: Instance) -> Self {
        InstanceRepr {
            r: inst.rank(),
            labels: inst.labels(),
            degrees: inst.degrees.entries,
            orders: inst.orders.0,
            flags: inst.flags,
        }
    }
}

impl TryFrom<InstanceRepr> for Instance {
    type Error = Error;

    fn try_from(repr: InstanceRepr) -> Result<Self> {
        check_len(repr.r, repr.degrees.len())?;
        let degrees = DegreeVector::new(repr.degrees)?
            .with_group(repr.labels.group, repr.labels.group_order)?;
        let orders = OrderVector::new(repr.orders)?;
        Ok(Instance::new(degrees, orders)?
            .with_flags(repr.flags)
            .with_s0(repr.labels.s0))
    }
}

/// `ord(f_1^{k_1} ... f_r^{k_r}) = sum_j k_j v_j`, with checked arithmetic.
pub fn ord(k: &ExponentVector, v: &OrderVector) -> Result<i64> {
    check_len(v.rank(), k.rank())?;
    k.0.iter().zip(&v.0).try_fold(0i64, |acc, (&kj, &vj)| {
        let kj = i64::try_from(kj).map_err(|_| Error::ArithmeticOverflow)?;
        kj.checked_mul(vj)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::ArithmeticOverflow)
    })
}

/// Holomorphy of `k`: its order is nonnegative.
pub fn is_member_hol(k: &ExponentVector, v: &OrderVector) -> Result<bool> {
    Ok(ord(k, v)? >= 0)
}

/// Divisibility in the free semigroup: `b - a` has no negative component.
pub fn divides_ar(a: &ExponentVector, b: &ExponentVector) -> Result<bool> {
    check_len(a.rank(), b.rank())?;
    Ok(a.le(b))
}

/// Divisibility inside Hol: the quotient exists and is itself holomorphic.
pub fn divides_hol(a: &ExponentVector, b: &ExponentVector, v: &OrderVector) -> Result<bool> {
    for x in [a, b] {
        if !is_member_hol(x, v)? {
            return Err(Error::NotInHol(x.0.clone()));
        }
    }
    match b.checked_sub(a)? {
        Some(h) => is_member_hol(&h, v),
        None => Ok(false),
    }
}

/// Admissibility verdict with the list of violated constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub ok: bool,
    pub reasons: Vec<String>,
}

pub fn is_admissible(inst: &Instance) -> Admissibility {
    let mut reasons = Vec::new();
    if inst.flags.require_dedekind {
        match ord(&inst.degrees.as_exponents(), &inst.orders) {
            Ok(x) if x >= 0 => {}
            Ok(x) => reasons.push(format!("dedekind: <d,v> = {x} < 0")),
            Err(e) => reasons.push(format!("dedekind: {e}")),
        }
    }
    if inst.flags.require_trivial_nonneg && inst.orders.0[0] < 0 {
        reasons.push(format!("trivial character: v_1 = {} < 0", inst.orders.0[0]));
    }
    Admissibility {
        ok: reasons.is_empty(),
        reasons,
    }
}
