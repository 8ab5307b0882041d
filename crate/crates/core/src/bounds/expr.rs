//! Bound functions N^e -> N^e as expression trees with memoized, budgeted
//! evaluation, and the C/h recursions of the strengthening loop.

use super::atable::ATable;
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub type Tuple = Vec<BigUint>;

#[derive(Clone, Debug)]
pub enum BoundError {
    BudgetExceeded { level: String },
    Table(super::atable::ATableError),
    NotAscending(String),
    BadInput(String),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::BudgetExceeded { level } => {
                write!(f, "budget exceeded while evaluating {}", level)
            }
            BoundError::Table(e) => write!(f, "{}", e),
            BoundError::NotAscending(m) => write!(f, "{}", m),
            BoundError::BadInput(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for BoundError {}

impl From<super::atable::ATableError> for BoundError {
    fn from(e: super::atable::ATableError) -> Self {
        BoundError::Table(e)
    }
}

/// Step budget shared across an evaluation; each memo insertion and each
/// admissible-tuple visit costs one step.
pub struct BoundBudget {
    pub limit: u64,
    used: u64,
    level: String,
}

impl BoundBudget {
    pub fn new(limit: u64) -> Self {
        BoundBudget {
            limit,
            used: 0,
            level: String::new(),
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn set_level(&mut self, level: &str) {
        self.level = level.to_string();
    }

    /// Append a recursion stage to the level label, keeping the outer
    /// context visible in budget reports.
    pub fn push_level(&mut self, stage: &str) {
        if self.level.is_empty() {
            self.level = stage.to_string();
        } else if !self.level.ends_with(stage) {
            self.level = format!("{}/{}", self.level, stage);
        }
    }

    fn step(&mut self) -> Result<(), BoundError> {
        self.used += 1;
        if self.used > self.limit {
            Err(BoundError::BudgetExceeded {
                level: self.level.clone(),
            })
        } else {
            Ok(())
        }
    }
}

/// An ascending function N^e -> N^e.
#[derive(Clone, Debug)]
pub enum BoundFunction {
    /// Broadcast constant.
    Constant(BigUint),
    /// Explicit per-component constants (padded with the last entry).
    ConstantVec(Tuple),
    /// `B_{eta,i}(delta) = A(eta, i) + 3(sum(delta) - 1)`, saturating at 0.
    BEta { table: Arc<ATable>, eta: u64 },
    /// `inner(delta + a)` componentwise (the translation t_a).
    Translate { offset: u64, inner: Arc<BoundFunction> },
    /// `factor * inner(delta)`.
    Scale { factor: u64, inner: Arc<BoundFunction> },
    /// The protection function `h_inner`.
    HOf { inner: Arc<BoundFunction> },
}

impl BoundFunction {
    pub fn fingerprint(&self) -> u64 {
        crate::util::hash_str(&format!("{:?}", self))
    }

    /// Evaluate at `delta` under the budget.
    pub fn eval(&self, delta: &[BigUint], budget: &mut BoundBudget) -> Result<Tuple, BoundError> {
        budget.step()?;
        match self {
            BoundFunction::Constant(c) => Ok(vec![c.clone(); delta.len()]),
            BoundFunction::ConstantVec(v) => {
                let mut out = Vec::with_capacity(delta.len());
                for i in 0..delta.len() {
                    out.push(v.get(i).or(v.last()).cloned().unwrap_or_else(BigUint::zero));
                }
                Ok(out)
            }
            BoundFunction::BEta { table, eta } => eval_b_eta(table, *eta, delta),
            BoundFunction::Translate { offset, inner } => {
                let shifted: Tuple = delta
                    .iter()
                    .map(|d| d + BigUint::from(*offset))
                    .collect();
                inner.eval(&shifted, budget)
            }
            BoundFunction::Scale { factor, inner } => {
                let v = inner.eval(delta, budget)?;
                Ok(v.into_iter().map(|x| x * BigUint::from(*factor)).collect())
            }
            BoundFunction::HOf { inner } => {
                let mut memo = HashMap::new();
                eval_h_memo(inner, delta, budget, &mut memo)
            }
        }
    }
}

/// `B_{eta,i}(delta) = A(eta,i) + 3(n-1)` with `n = sum(delta)`, saturating.
pub fn eval_b_eta(table: &ATable, eta: u64, delta: &[BigUint]) -> Result<Tuple, BoundError> {
    let n: BigUint = delta.iter().sum();
    let mut out = Vec::with_capacity(delta.len());
    for i in 1..=delta.len() as u64 {
        let a = table.get(eta, i)?.clone();
        let v = if n.is_zero() {
            // 3(n-1) = -3: saturate at zero
            if a >= BigUint::from(3u64) {
                a - BigUint::from(3u64)
            } else {
                BigUint::zero()
            }
        } else {
            a + BigUint::from(3u64) * (&n - BigUint::from(1u64))
        };
        out.push(v);
    }
    Ok(out)
}

fn max_component(t: &[BigUint]) -> BigUint {
    t.iter().cloned().max().unwrap_or_else(BigUint::zero)
}

fn tuple_sum(t: &[BigUint]) -> BigUint {
    t.iter().sum()
}

/// Strict reverse-lexicographic comparison with the last component most
/// significant: the well-order of the strengthening induction.
fn revlex_less(a: &[BigUint], b: &[BigUint]) -> bool {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return a[i] < b[i];
        }
    }
    false
}

/// Enumerate the admissible predecessors of `delta`: tuples strictly below
/// in revlex with component sum < sum(delta) + 2*bmax. Calls `visit` on
/// each; enumeration cost is charged to the budget.
fn for_admissible(
    delta: &[BigUint],
    bmax: &BigUint,
    budget: &mut BoundBudget,
    visit: &mut dyn FnMut(&[BigUint], &mut BoundBudget) -> Result<(), BoundError>,
) -> Result<(), BoundError> {
    let e = delta.len();
    let sum_bound = tuple_sum(delta) + BigUint::from(2u64) * bmax; // strict
    if sum_bound.is_zero() {
        return Ok(());
    }
    let max_sum = &sum_bound - BigUint::from(1u64);
    // enumerate tuples with sum <= max_sum by an odometer
    let mut cur: Tuple = vec![BigUint::zero(); e];
    loop {
        budget.step()?;
        if revlex_less(&cur, delta) {
            visit(&cur, budget)?;
        }
        // increment
        let mut i = 0;
        loop {
            if i == e {
                return Ok(());
            }
            cur[i] += BigUint::from(1u64);
            if tuple_sum(&cur) <= max_sum {
                break;
            }
            cur[i] = BigUint::zero();
            i += 1;
        }
    }
}

type Memo = HashMap<Tuple, Tuple>;

fn eval_h_memo(
    b: &BoundFunction,
    delta: &[BigUint],
    budget: &mut BoundBudget,
    memo: &mut Memo,
) -> Result<Tuple, BoundError> {
    if let Some(hit) = memo.get(delta) {
        return Ok(hit.clone());
    }
    budget.step()?;
    let base = b.eval(delta, budget)?;
    let e = delta.len();
    // base cases: e = 1, or delta = (d1, 0, ..., 0)
    if e == 1 || delta[1..].iter().all(|x| x.is_zero()) {
        memo.insert(delta.to_vec(), base.clone());
        return Ok(base);
    }
    let bmax = max_component(&base);
    let mut acc = base;
    let mut visitor = |dp: &[BigUint], budget: &mut BoundBudget| -> Result<(), BoundError> {
        let sub = eval_h_memo(b, dp, budget, memo)?;
        for (a, s) in acc.iter_mut().zip(sub) {
            if s > *a {
                *a = s;
            }
        }
        Ok(())
    };
    for_admissible(delta, &bmax, budget, &mut visitor)?;
    memo.insert(delta.to_vec(), acc.clone());
    Ok(acc)
}

/// `h_B(delta)`: componentwise maximum of `B` over the reachable admissible
/// predecessors, per the strengthening-loop recursion.
pub fn eval_h(
    b: &BoundFunction,
    delta: &[BigUint],
    budget: &mut BoundBudget,
) -> Result<Tuple, BoundError> {
    budget.push_level("h");
    let mut memo = Memo::new();
    eval_h_memo(b, delta, budget, &mut memo)
}

fn eval_c_memo(
    b: &BoundFunction,
    delta: &[BigUint],
    budget: &mut BoundBudget,
    memo: &mut Memo,
) -> Result<Tuple, BoundError> {
    if let Some(hit) = memo.get(delta) {
        return Ok(hit.clone());
    }
    budget.step()?;
    let e = delta.len();
    // bases: e = 1 and (d1, 0, ..., 0) give C = delta; top component always
    // equals delta_e
    if e == 1 || delta[1..].iter().all(|x| x.is_zero()) {
        let v = delta.to_vec();
        memo.insert(delta.to_vec(), v.clone());
        return Ok(v);
    }
    let base = b.eval(delta, budget)?;
    let bmax = max_component(&base);
    let mut acc: Tuple = delta.to_vec();
    let mut visitor = |dp: &[BigUint], budget: &mut BoundBudget| -> Result<(), BoundError> {
        let sub = eval_c_memo(b, dp, budget, memo)?;
        for i in 0..e - 1 {
            if sub[i] > acc[i] {
                acc[i] = sub[i].clone();
            }
        }
        Ok(())
    };
    for_admissible(delta, &bmax, budget, &mut visitor)?;
    acc[e - 1] = delta[e - 1].clone();
    memo.insert(delta.to_vec(), acc.clone());
    Ok(acc)
}

/// `C_B(delta)`: the dimension bound of the strengthening loop. Top
/// component is `delta_e`; lower components are the maxima of the recursion
/// over admissible predecessors.
pub fn eval_c(
    b: &BoundFunction,
    delta: &[BigUint],
    budget: &mut BoundBudget,
) -> Result<Tuple, BoundError> {
    budget.push_level("C");
    let mut memo = Memo::new();
    eval_c_memo(b, delta, budget, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u64]) -> Tuple {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn b_eta_spec_example() {
        // toy A(3,i) = i (table with eta=3 rows i..): delta = (1,1), i = 2
        // -> 2 + 3*1 = 5
        let mut rows = std::collections::BTreeMap::new();
        for i in 1..=2u64 {
            rows.insert((3, i), BigUint::from(i));
        }
        let a = ATable::new(rows).unwrap();
        let v = eval_b_eta(&a, 3, &t(&[1, 1])).unwrap();
        assert_eq!(v[1], BigUint::from(5u64));
        // n = 1: B_1 = A(3,1) + 0 = 1
        let v2 = eval_b_eta(&a, 3, &t(&[1, 0])).unwrap();
        assert_eq!(v2[0], BigUint::from(1u64));
        // missing entries rejected
        assert!(eval_b_eta(&a, 2, &t(&[1, 0])).is_err());
    }

    #[test]
    fn c_top_component_and_one_dim() {
        let b = BoundFunction::Constant(BigUint::from(2u64));
        let mut budget = BoundBudget::new(1_000_000);
        let v = eval_c(&b, &t(&[3, 4]), &mut budget).unwrap();
        assert_eq!(v[1], BigUint::from(4u64), "top component is delta_d");
        let v1 = eval_c(&b, &t(&[7]), &mut budget).unwrap();
        assert_eq!(v1, t(&[7]), "e = 1 gives C = delta");
    }

    #[test]
    fn h_at_zero_is_b_at_zero() {
        let b = BoundFunction::Constant(BigUint::from(5u64));
        let mut budget = BoundBudget::new(1_000_000);
        let v = eval_h(&b, &t(&[0, 0]), &mut budget).unwrap();
        assert_eq!(v, t(&[5, 5]));
    }

    #[test]
    fn budget_exhaustion_reports_level() {
        let b = BoundFunction::Constant(BigUint::from(50u64));
        let mut budget = BoundBudget::new(100);
        match eval_c(&b, &t(&[10, 10]), &mut budget) {
            Err(BoundError::BudgetExceeded { level }) => assert_eq!(level, "C"),
            other => panic!("expected budget exhaustion, got {:?}", other.map(|_| ())),
        }
    }

    /// Direct non-memoized evaluator used as the oracle for the recursions.
    fn h_direct(b: &BoundFunction, delta: &[BigUint]) -> Tuple {
        let mut budget = BoundBudget::new(u64::MAX);
        let base = b.eval(delta, &mut budget).unwrap();
        if delta.len() == 1 || delta[1..].iter().all(|x| x.is_zero()) {
            return base;
        }
        let bmax = max_component(&base);
        let mut acc = base;
        let mut visit = |dp: &[BigUint], _: &mut BoundBudget| -> Result<(), BoundError> {
            let sub = h_direct(b, dp);
            for (a, s) in acc.iter_mut().zip(sub) {
                if s > *a {
                    *a = s;
                }
            }
            Ok(())
        };
        for_admissible(delta, &bmax, &mut budget, &mut visit).unwrap();
        acc
    }

    fn c_direct(b: &BoundFunction, delta: &[BigUint]) -> Tuple {
        let e = delta.len();
        if e == 1 || delta[1..].iter().all(|x| x.is_zero()) {
            return delta.to_vec();
        }
        let mut budget = BoundBudget::new(u64::MAX);
        let base = b.eval(delta, &mut budget).unwrap();
        let bmax = max_component(&base);
        let mut acc: Tuple = delta.to_vec();
        let mut visit = |dp: &[BigUint], _: &mut BoundBudget| -> Result<(), BoundError> {
            let sub = c_direct(b, dp);
            for i in 0..e - 1 {
                if sub[i] > acc[i] {
                    acc[i] = sub[i].clone();
                }
            }
            Ok(())
        };
        for_admissible(delta, &bmax, &mut budget, &mut visit).unwrap();
        acc[e - 1] = delta[e - 1].clone();
        acc
    }

    #[test]
    fn memoized_matches_direct_on_small_tuples() {
        let b = BoundFunction::Constant(BigUint::from(1u64));
        for delta in [vec![0u64, 1], vec![1, 1], vec![2, 1], vec![0, 2], vec![1, 0, 1]] {
            let d = t(&delta);
            let mut budget = BoundBudget::new(100_000_000);
            let via_memo = eval_h(&b, &d, &mut budget).unwrap();
            assert_eq!(via_memo, h_direct(&b, &d), "h mismatch at {:?}", delta);
            let via_memo_c = eval_c(&b, &d, &mut budget).unwrap();
            assert_eq!(via_memo_c, c_direct(&b, &d), "C mismatch at {:?}", delta);
        }
    }

    #[test]
    fn evaluations_are_ascending_on_comparable_pairs() {
        let b = BoundFunction::Constant(BigUint::from(1u64));
        let pairs = [
            (vec![0u64, 1], vec![1u64, 1]),
            (vec![1, 1], vec![1, 2]),
            (vec![0, 1], vec![2, 2]),
        ];
        for (lo, hi) in pairs {
            let mut budget = BoundBudget::new(100_000_000);
            let vlo = eval_c(&b, &t(&lo), &mut budget).unwrap();
            let vhi = eval_c(&b, &t(&hi), &mut budget).unwrap();
            for (a, b2) in vlo.iter().zip(&vhi) {
                assert!(a <= b2, "C not ascending: {:?} vs {:?}", lo, hi);
            }
            let hlo = eval_h(&b, &t(&lo), &mut budget).unwrap();
            let hhi = eval_h(&b, &t(&hi), &mut budget).unwrap();
            for (a, b2) in hlo.iter().zip(&hhi) {
                assert!(a <= b2, "h not ascending: {:?} vs {:?}", lo, hi);
            }
        }
    }
}
