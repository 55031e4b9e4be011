//! Faces of monoids and quotients by faces.

use super::error::{MonoidError, Result};
use super::fgmonoid::FgMonoid;
use super::group::{GroupElement, QuotientMap};
use super::hom::MonoidHom;
use super::lp;

/// Whether `f` is a face of `m`: a submonoid with `x + y ∈ f ⇒ x, y ∈ f`.
///
/// `f` must be generated by the generators of `m` it contains, and no other
/// generator of `m` may lie on the smallest face of the cone containing them.
pub fn is_face(m: &FgMonoid, f: &FgMonoid) -> bool {
    if m.ambient() != f.ambient() || !m.contains_monoid(f) {
        return false;
    }
    let a = m.ambient();
    let inside: Vec<GroupElement> = m
        .generators()
        .iter()
        .filter(|g| f.contains_unchecked(g))
        .cloned()
        .collect();
    let spanned = FgMonoid::new(a.clone(), inside.clone()).expect("face candidate");
    if !spanned.contains_monoid(f) {
        return false;
    }
    let free: Vec<Vec<i64>> = m.generators().iter().map(|g| a.free_part(g).to_vec()).collect();
    let sigma = inside.iter().fold(a.zero(), |acc, g| a.add(&acc, g));
    let sigma = a.free_part(&sigma).to_vec();
    m.generators()
        .iter()
        .filter(|g| !inside.contains(g))
        .all(|g| !lp::in_face_of(&free, &sigma, a.free_part(g)))
}

/// The image `C` of `M` in `M_amb / F^gp` together with the projection.
pub fn quotient_by_face(m: &FgMonoid, f: &FgMonoid) -> Result<(FgMonoid, MonoidHom)> {
    if !is_face(m, f) {
        return Err(MonoidError::NotAFace);
    }
    let q = QuotientMap::new(m.ambient(), f.generators())?;
    let images = m.generators().iter().map(|g| q.apply(g)).collect();
    let c = FgMonoid::new(q.target().clone(), images)?;
    let proj = MonoidHom::new(m.clone(), c.clone(), q.matrix().to_vec())?;
    Ok((c, proj))
}

/// The face of `m` generated by the generators sent to zero by `a`.
pub fn kernel_face(a: &MonoidHom) -> FgMonoid {
    let m = a.domain();
    let gens = m
        .generators()
        .iter()
        .filter(|g| a.apply(g).is_zero())
        .cloned()
        .collect();
    FgMonoid::new(m.ambient().clone(), gens).expect("kernel face")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    #[test]
    fn quotient_of_plane_by_axis() {
        let m = FgMonoid::free(2);
        let f = FgMonoid::in_lattice(2, &[vec![1, 0]]).unwrap();
        let (c, proj) = quotient_by_face(&m, &f).unwrap();
        assert_eq!(c.ambient().rank, 1);
        assert!(MonoidHom::identity(&c).is_isomorphism());
        assert_eq!(c.generators().len(), 1);
        assert_eq!(proj.apply(&e(&[5, 0])), proj.apply(&e(&[0, 0])));
        assert_ne!(proj.apply(&e(&[0, 1])), proj.apply(&e(&[0, 0])));
    }

    #[test]
    fn trivial_face() {
        let cusp = FgMonoid::in_lattice(1, &[vec![2], vec![3]]).unwrap();
        let zero = FgMonoid::in_lattice(1, &[]).unwrap();
        let (c, proj) = quotient_by_face(&cusp, &zero).unwrap();
        assert!(proj.is_isomorphism());
        assert_eq!(c.generators().len(), 2);
    }

    #[test]
    fn non_faces_rejected() {
        let m = FgMonoid::free(2);
        let diag = FgMonoid::in_lattice(2, &[vec![1, 1]]).unwrap();
        assert_eq!(quotient_by_face(&m, &diag).unwrap_err(), MonoidError::NotAFace);
        let cone = FgMonoid::in_lattice(2, &[vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap();
        let ray = FgMonoid::in_lattice(2, &[vec![1, 1]]).unwrap();
        assert!(!is_face(&cone, &ray));
        let edge = FgMonoid::in_lattice(2, &[vec![1, 2]]).unwrap();
        assert!(is_face(&cone, &edge));
        // {0} is not a face of a monoid with units.
        let half = FgMonoid::in_lattice(1, &[vec![1], vec![-1]]).unwrap();
        assert!(!is_face(&half, &FgMonoid::in_lattice(1, &[]).unwrap()));
    }

    #[test]
    fn sub_of_face_generators() {
        // <2e1> inside N^2 is contained in the axis face but is not itself a face.
        let m = FgMonoid::free(2);
        let f = FgMonoid::in_lattice(2, &[vec![2, 0]]).unwrap();
        assert!(!is_face(&m, &f));
    }
}
