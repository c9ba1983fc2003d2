use im::HashMap;

use crate::term::{Term, Var};

/// Persistent triangular substitution. Extending returns a new version and
/// leaves every earlier version untouched.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: HashMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn extend(&self, v: Var, t: Term) -> Substitution {
        Substitution {
            map: self.map.update(v, t),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_is_persistent() {
        let s0 = Substitution::new();
        let s1 = s0.extend(Var(0), Term::num(1));
        let s2 = s1.extend(Var(1), Term::num(2));
        assert!(s0.is_empty());
        assert_eq!(s1.len(), 1);
        assert_eq!(s2.len(), 2);
        assert_eq!(s1.get(Var(1)), None);
        assert_eq!(s2.get(Var(0)), Some(&Term::num(1)));
    }
}
