use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::constraints::store::ConstraintStore;
use crate::subst::Substitution;
use crate::term::{Term, Var};

/// Counters for observing the solver from tests. Attach with
/// [`State::with_probe`]; every state derived from that one shares it.
#[derive(Debug, Default)]
pub struct Probe {
    watched_rechecks: AtomicU64,
}

impl Probe {
    pub fn new() -> Arc<Probe> {
        Arc::new(Probe::default())
    }

    /// How many times a stored watched disequality was re-examined.
    pub fn watched_rechecks(&self) -> u64 {
        self.watched_rechecks.load(Ordering::Relaxed)
    }

    pub(crate) fn note_watched_recheck(&self) {
        self.watched_rechecks.fetch_add(1, Ordering::Relaxed);
    }
}

/// One point in the search: substitution, suspended constraints, and the
/// next unused variable number.
#[derive(Clone, Default)]
pub struct State {
    pub(crate) subst: Substitution,
    pub(crate) store: ConstraintStore,
    pub(crate) next_var: u32,
    pub(crate) probe: Option<Arc<Probe>>,
}

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_probe(mut self, probe: Arc<Probe>) -> Self {
        self.probe = Some(probe);
        self
    }

    pub fn subst(&self) -> &Substitution {
        &self.subst
    }

    pub fn store(&self) -> &ConstraintStore {
        &self.store
    }

    pub fn next_var(&self) -> u32 {
        self.next_var
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next_var);
        self.next_var += 1;
        v
    }

    pub fn fresh_term(&mut self) -> Term {
        Term::Var(self.fresh())
    }

    pub fn fresh_vars(&mut self, n: usize) -> Vec<Term> {
        (0..n).map(|_| self.fresh_term()).collect()
    }

    pub fn walk(&self, t: &Term) -> Term {
        crate::term::walk(t, &self.subst)
    }

    pub fn walk_star(&self, t: &Term) -> Term {
        crate::term::walk_star(t, &self.subst)
    }

    /// Cheap fingerprint that changes whenever a binding, a fresh variable
    /// or a new constraint is added.
    pub(crate) fn footprint(&self) -> (usize, u64, u32) {
        (self.subst.len(), self.store.revision(), self.next_var)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("State")
            .field("subst", &self.subst)
            .field("store", &self.store)
            .field("next_var", &self.next_var)
            .finish()
    }
}
