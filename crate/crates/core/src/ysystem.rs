//! Zamolodchikov Y-systems for pairs of simply-laced Dynkin diagrams.
//!
//! Nodes are pairs `(i, i')` of a vertex of each diagram. The recurrence at
//! `(i, i', t+1)` reads only diagram neighbours at time `t`, and a step to a
//! neighbour flips the parity of `c(i) + c'(i')`, where `c`, `c'` are the
//! bipartite colourings of the diagrams (for type A, the parity of the
//! 1-based index). So the values with `c(i) + c'(i') + t` even form a closed
//! subsystem, which is what the default mode iterates: even nodes get
//! indeterminates at `t = 0`, odd ones at `t = 1`, for `n * n'` indeterminates. The full mode seeds every
//! node at both times (`2 * n * n'` indeterminates).

use thiserror::Error;

use crate::quiver::DynkinType;
use crate::roots::RootSystem;
use crate::{ArithError, RationalFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YSystemError {
    #[error("no period up to {max_steps} steps")]
    NotFound { max_steps: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YSystemMode {
    /// The closed subsystem where `i + i' + t` is even.
    Restricted,
    /// Every node at both initial times.
    Full,
}

/// Two consecutive time slices of a Y-system solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSystemState {
    delta: DynkinType,
    delta_prime: DynkinType,
    mode: YSystemMode,
    t: i64,
    prev: Vec<Option<RationalFunc>>,
    curr: Vec<Option<RationalFunc>>,
}

impl YSystemState {
    /// Fresh indeterminates at `t = 0` and `t = 1`; the state sits at `t = 1`.
    pub fn init(delta: DynkinType, delta_prime: DynkinType, mode: YSystemMode) -> Self {
        let (n, np) = (delta.rank(), delta_prime.rank());
        let nodes = n * np;
        let nvars = match mode {
            YSystemMode::Restricted => nodes,
            YSystemMode::Full => 2 * nodes,
        };
        let mut prev = vec![None; nodes];
        let mut curr = vec![None; nodes];
        let (c, cp) = (RootSystem::shared(delta).bipartition(), RootSystem::shared(delta_prime).bipartition());
        let mut next_var = 0;
        for t in 0..2 {
            for i in 0..n {
                for ip in 0..np {
                    if mode == YSystemMode::Full || (c[i] + cp[ip] + t) % 2 == 0 {
                        let slot = if t == 0 { &mut prev } else { &mut curr };
                        slot[i * np + ip] = Some(RationalFunc::var(nvars, next_var));
                        next_var += 1;
                    }
                }
            }
        }
        YSystemState { delta, delta_prime, mode, t: 1, prev, curr }
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn mode(&self) -> YSystemMode {
        self.mode
    }

    pub fn indeterminate_count(&self) -> usize {
        self.prev.iter().chain(&self.curr).filter(|v| v.is_some()).count()
    }

    /// `Y_{i,i',t}` (0-based nodes), if that node is active at the current time.
    pub fn current(&self, i: usize, ip: usize) -> Option<&RationalFunc> {
        self.curr[i * self.delta_prime.rank() + ip].as_ref()
    }

    /// `Y_{i,i',t-1}`.
    pub fn previous(&self, i: usize, ip: usize) -> Option<&RationalFunc> {
        self.prev[i * self.delta_prime.rank() + ip].as_ref()
    }

    /// All defined values of both slices.
    pub fn values(&self) -> impl Iterator<Item = &RationalFunc> {
        self.prev.iter().chain(&self.curr).flatten()
    }

    /// Advances one time step.
    pub fn step(&self) -> Result<Self, YSystemError> {
        let next = advance(self.delta, self.delta_prime, &self.prev, &self.curr)?;
        Ok(YSystemState { prev: self.curr.clone(), curr: next, t: self.t + 1, ..self.clone() })
    }

    /// Goes one step back in time by solving the same equation for `Y_{t-2}`.
    pub fn step_back(&self) -> Result<Self, YSystemError> {
        let before = advance(self.delta, self.delta_prime, &self.curr, &self.prev)?;
        Ok(YSystemState { prev: before, curr: self.prev.clone(), t: self.t - 1, ..self.clone() })
    }

    fn slices_equal(&self, other: &Self) -> bool {
        self.prev == other.prev && self.curr == other.curr
    }
}

/// Computes the slice after `curr` from `(prev, curr)`.
fn advance(
    delta: DynkinType,
    delta_prime: DynkinType,
    prev: &[Option<RationalFunc>],
    curr: &[Option<RationalFunc>],
) -> Result<Vec<Option<RationalFunc>>, YSystemError> {
    let a = RootSystem::shared(delta);
    let ap = RootSystem::shared(delta_prime);
    let (n, np) = (delta.rank(), delta_prime.rank());
    let at = |i: usize, ip: usize| -> &RationalFunc {
        curr[i * np + ip].as_ref().expect("Y-system step read an inactive node; parity subsystem is not closed")
    };
    let mut next = vec![None; n * np];
    for i in 0..n {
        for ip in 0..np {
            let Some(before) = &prev[i * np + ip] else { continue };
            let nvars = before.nvars();
            let one = RationalFunc::one(nvars);
            let mut value = one.clone();
            for j in 0..n {
                if a.incidence()[i][j] != 0 {
                    value = value.checked_mul(&(&one + at(j, ip)).pow(a.incidence()[i][j])?)?;
                }
            }
            for jp in 0..np {
                if ap.incidence()[ip][jp] != 0 {
                    let d = (&one + &at(i, jp).inv()?).pow(ap.incidence()[ip][jp])?;
                    value = value.checked_div(&d)?;
                }
            }
            next[i * np + ip] = Some(value.checked_div(before)?);
        }
    }
    Ok(next)
}

/// Outcome of a period search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YSystemPeriod {
    /// Minimal period found.
    pub period: usize,
    /// `2 (h + h')`.
    pub bound: usize,
}

impl YSystemPeriod {
    pub fn divides_bound(&self) -> bool {
        self.bound.is_multiple_of(self.period)
    }
}

/// `2 (h + h')` for the pair.
pub fn period_bound(delta: DynkinType, delta_prime: DynkinType) -> usize {
    2 * (RootSystem::shared(delta).coxeter_number() + RootSystem::shared(delta_prime).coxeter_number())
}

pub fn default_max_steps(delta: DynkinType, delta_prime: DynkinType) -> usize {
    period_bound(delta, delta_prime) + 1
}

/// Smallest `P <= max_steps` with the slices at `P, P + 1` equal to those at `0, 1`.
pub fn ysystem_period(
    delta: DynkinType,
    delta_prime: DynkinType,
    mode: YSystemMode,
    max_steps: usize,
) -> Result<YSystemPeriod, YSystemError> {
    let start = YSystemState::init(delta, delta_prime, mode);
    let bound = period_bound(delta, delta_prime);
    let mut st = start.clone();
    for p in 1..=max_steps {
        st = st.step()?;
        if st.slices_equal(&start) {
            return Ok(YSystemPeriod { period: p, bound });
        }
    }
    Err(YSystemError::NotFound { max_steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::render::parse_ratfunc;

    #[test]
    fn indeterminate_counts() {
        let a = |k| DynkinType::a(k);
        assert_eq!(YSystemState::init(a(1), a(1), YSystemMode::Restricted).indeterminate_count(), 1);
        assert_eq!(YSystemState::init(a(2), a(1), YSystemMode::Restricted).indeterminate_count(), 2);
        assert_eq!(YSystemState::init(a(2), a(2), YSystemMode::Restricted).indeterminate_count(), 4);
        assert_eq!(YSystemState::init(a(2), a(1), YSystemMode::Full).indeterminate_count(), 4);
    }

    #[test]
    fn a1_a1_inverts() {
        let st = YSystemState::init(DynkinType::a(1), DynkinType::a(1), YSystemMode::Full);
        let next = st.step().unwrap();
        assert_eq!(next.current(0, 0).unwrap(), &st.previous(0, 0).unwrap().inv().unwrap());
    }

    #[test]
    fn a2_a1_first_step() {
        let st = YSystemState::init(DynkinType::a(2), DynkinType::a(1), YSystemMode::Restricted);
        // y1 = Y_{1,1,0}, y2 = Y_{2,1,1}
        let next = st.step().unwrap();
        assert_eq!(next.current(0, 0).unwrap(), &parse_ratfunc("(1 + y2)/y1", 2, "y").unwrap());
        assert_eq!(next.current(1, 0), None);
    }

    #[test]
    fn step_back_undoes_step() {
        let st = YSystemState::init(DynkinType::a(2), DynkinType::a(2), YSystemMode::Restricted);
        let two = st.step().unwrap().step().unwrap();
        let back = two.step_back().unwrap().step_back().unwrap();
        assert_eq!(back, st);
    }

    #[test]
    fn small_periods() {
        let a = |k| DynkinType::a(k);
        for mode in [YSystemMode::Restricted, YSystemMode::Full] {
            let p = ysystem_period(a(1), a(1), mode, 9).unwrap();
            assert!(p.divides_bound());
            let p = ysystem_period(a(2), a(1), mode, 11).unwrap();
            assert_eq!(p.bound, 10);
            assert!(p.divides_bound());
        }
        assert!(matches!(
            ysystem_period(a(2), a(1), YSystemMode::Restricted, 3),
            Err(YSystemError::NotFound { max_steps: 3 })
        ));
    }
}
