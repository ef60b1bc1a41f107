use compat_linf::exactla::int;
use compat_linf::{BasisElement, GradedSpace, Vector};

fn b(d: i64, i: usize) -> BasisElement {
    BasisElement::new(d, i)
}

#[test]
fn basis_order_is_degree_then_index() {
    let v = GradedSpace::new([(1, 1), (-1, 2), (0, 0)]);
    assert_eq!(v.basis(), vec![b(-1, 0), b(-1, 1), b(1, 0)]);
    assert_eq!(v.total_dim(), 3);
    assert_eq!(v.dim(0), 0);
    assert_eq!(v.flat_index(b(1, 0)), 2);
    assert!(!v.contains(b(0, 0)));
}

#[test]
fn shifts() {
    let l = GradedSpace::new([(-1, 2), (0, 3)]);
    let v = l.desuspend();
    assert_eq!(v.dims().iter().map(|(d, n)| (*d, *n)).collect::<Vec<_>>(), vec![(-2, 2), (-1, 3)]);
    assert_eq!(v.suspend(), l);
    let x = Vector::from_pairs([(b(0, 1), int(2)), (b(0, 0), int(-1))]);
    assert_eq!(x.shift(-1).shift(1), x);
    assert_eq!(x.degree(), Some(0));
}

#[test]
fn labels_do_not_affect_equality() {
    let a = GradedSpace::ungraded(2);
    let mut labels = std::collections::BTreeMap::new();
    labels.insert(b(0, 0), "x".to_string());
    let c = a.clone().with_labels(labels);
    assert_eq!(a, c);
    assert_eq!(c.label(b(0, 0)), "x");
}

#[test]
fn vector_arithmetic_cancels() {
    let x = Vector::from_pairs([(b(0, 0), int(1)), (b(1, 0), int(3))]);
    let y = x.scaled(&int(2));
    assert!(y.sub(&x).sub(&x).is_zero());
    assert!(!x.is_homogeneous());
    assert_eq!(x.restrict(1), Vector::term(b(1, 0), int(3)));
    let v = GradedSpace::new([(0, 1), (1, 1)]);
    assert_eq!(Vector::from_dense(&v, &x.to_dense(&v)), x);
}

#[test]
fn direct_sum_stacks_indices() {
    let a = GradedSpace::new([(0, 1), (1, 1)]);
    let c = GradedSpace::new([(0, 2)]);
    let s = a.direct_sum(&c);
    assert_eq!(s.dim(0), 3);
    assert_eq!(s.dim(1), 1);
}
