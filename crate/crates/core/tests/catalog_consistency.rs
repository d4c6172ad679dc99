//! Cross-formula consistency over the whole built-in catalog:
//! Todd = A-hat * exp(c1/2) as classes, and the Dolbeault index equals the
//! Todd integral, on every complex model of real dimension <= 12.

use fracindex::catalog::{cp, hypersurface, product, ManifoldModel};
use fracindex::engine::dolbeault_index;
use fracindex::genera::{genus_of, GenusKind};
use fracindex::rational::{rat_i64, Rational};

fn complex_catalog() -> Vec<ManifoldModel> {
    let mut out = vec![
        cp(1),
        cp(2),
        cp(3),
        cp(4),
        cp(5),
        cp(6),
        hypersurface(1, 2),
        hypersurface(1, 3),
        hypersurface(1, 4),
        hypersurface(1, 5),
        hypersurface(2, 4),
        hypersurface(2, 5),
        hypersurface(3, 7),
        product(&cp(1), &cp(1)).unwrap(),
        product(&cp(1), &cp(2)).unwrap(),
        product(&cp(2), &cp(2)).unwrap(),
        product(&cp(1), &hypersurface(1, 4)).unwrap(),
    ];
    out.retain(|m| m.real_dimension() <= 12);
    out
}

#[test]
fn todd_is_ahat_times_half_exponential() {
    for m in complex_catalog() {
        let todd = genus_of(GenusKind::Todd, m.tangent()).unwrap();
        let ahat = genus_of(GenusKind::AHat, m.tangent()).unwrap();
        let half = m.c1().scale(&Rational::new(1.into(), 2.into()));
        let rhs = ahat.mul(&half.exp().unwrap()).unwrap();
        assert_eq!(todd, rhs, "on {}", m.label());
    }
}

#[test]
fn dolbeault_equals_todd_integral() {
    for m in complex_catalog() {
        let report = dolbeault_index(&m).unwrap();
        let todd = genus_of(GenusKind::Todd, m.tangent()).unwrap().integrate();
        assert_eq!(report.value, todd, "on {}", m.label());
        assert!(report.is_integer, "Todd genus of {} should be integral", m.label());
    }
}

#[test]
fn arithmetic_genus_of_projective_spaces_is_one() {
    for n in 1..=6u32 {
        assert_eq!(dolbeault_index(&cp(n)).unwrap().value, rat_i64(1));
    }
}
