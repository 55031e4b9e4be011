//! Pseudo-terminal objects and weakly terminal sets.

use serde::Serialize;

use super::finite::{FiniteCategory, Obj};

/// `Hom(c, d)` is empty or an `Aut(d)`-torsor for every `c`.
pub fn is_pseudo_terminal(c: &FiniteCategory, d: Obj) -> bool {
    let aut = c.automorphisms(d);
    c.objects().all(|o| {
        let hom = c.hom(o, d);
        let Some(&f0) = hom.first() else {
            return true;
        };
        // a ↦ a∘f0 is a bijection Aut(d) -> Hom(o, d).
        let mut orbit: Vec<usize> = aut.iter().map(|&a| c.comp(a, f0)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.len() == aut.len() && orbit.len() == hom.len()
    })
}

/// Which of W1 and W2 hold for a set of objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeaklyTerminal {
    pub w1: bool,
    pub w2: bool,
}

impl WeaklyTerminal {
    pub fn holds(&self) -> bool {
        self.w1 && self.w2
    }
}

/// W1: every object maps to some member. W2: any `u: c -> D`, `v: c -> D'`
/// with `D, D'` members have exactly one `f: D -> D'` with `f∘u = v`.
pub fn weakly_terminal(c: &FiniteCategory, set: &[Obj]) -> WeaklyTerminal {
    let w1 = c.objects().all(|o| set.iter().any(|&d| !c.hom(o, d).is_empty()));
    let w2 = c.objects().all(|o| {
        set.iter().all(|&d1| {
            set.iter().all(|&d2| {
                c.hom(o, d1).iter().all(|&u| {
                    c.hom(o, d2)
                        .iter()
                        .all(|&v| c.hom(d1, d2).iter().filter(|&&f| c.comp(f, u) == v).count() == 1)
                })
            })
        })
    });
    WeaklyTerminal { w1, w2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::finite::examples::*;

    #[test]
    fn terminal_object_of_arrow() {
        let c = arrow();
        assert!(is_pseudo_terminal(&c, 1));
        // Hom(0, 0) is a torsor and Hom(1, 0) is empty.
        assert!(is_pseudo_terminal(&c, 0));
        assert!(weakly_terminal(&c, &[1]).holds());
        assert!(!weakly_terminal(&c, &[0]).w1);
    }

    #[test]
    fn group_object_is_weakly_terminal() {
        let c = cyclic(4);
        assert!(is_pseudo_terminal(&c, 0));
        assert!(weakly_terminal(&c, &[0]).holds());
    }
}
