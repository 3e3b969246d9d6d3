//! Randomized properties across modules: parser round trips, agreement of
//! the Hermite engines and of the two minimal telescoping methods.

use ctrat::algebra::bpoly::{self, from_terms, BPoly};
use ctrat::algebra::RFunc;
use ctrat::hermite::{reduce_rfunc, Engine};
use ctrat::parser::{parse, parse_rfunc, print_canonical, to_rfunc, Expr, ExprKind};
use ctrat::telescope::{telescope, verify_certificate, Method, Options};
use num_bigint::BigInt;
use proptest::prelude::*;

fn node(kind: ExprKind) -> Expr {
    Expr { kind, offset: 0 }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20).prop_map(|n| node(ExprKind::Num(BigInt::from(n)))),
        prop_oneof![Just('x'), Just('y')].prop_map(|v| node(ExprKind::Var(v))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| node(ExprKind::Neg(b(a)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| node(ExprKind::Add(b(a), b(c)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| node(ExprKind::Sub(b(a), b(c)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| node(ExprKind::Mul(b(a), b(c)))),
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| node(ExprKind::Div(b(a), b(c)))),
            (inner, 0u32..4).prop_map(move |(a, k)| node(ExprKind::Pow(b(a), b(node(ExprKind::Num(BigInt::from(k))))))),
        ]
    })
}

/// Fully parenthesized text of an expression.
fn show(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Num(n) => n.to_string(),
        ExprKind::Var(v) => v.to_string(),
        ExprKind::Dx => "Dx".into(),
        ExprKind::Neg(a) => format!("(-{})", show(a)),
        ExprKind::Add(a, b) => format!("({} + {})", show(a), show(b)),
        ExprKind::Sub(a, b) => format!("({} - {})", show(a), show(b)),
        ExprKind::Mul(a, b) => format!("({}*{})", show(a), show(b)),
        ExprKind::Div(a, b) => format!("({}/{})", show(a), show(b)),
        ExprKind::Pow(a, b) => format!("({}^{})", show(a), show(b)),
    }
}

fn same_tree(a: &Expr, b: &Expr) -> bool {
    use ExprKind::*;
    match (&a.kind, &b.kind) {
        (Num(x), Num(y)) => x == y,
        (Var(x), Var(y)) => x == y,
        (Dx, Dx) => true,
        (Neg(x), Neg(y)) => same_tree(x, y),
        (Add(x1, x2), Add(y1, y2))
        | (Sub(x1, x2), Sub(y1, y2))
        | (Mul(x1, x2), Mul(y1, y2))
        | (Div(x1, x2), Div(y1, y2))
        | (Pow(x1, x2), Pow(y1, y2)) => same_tree(x1, y1) && same_tree(x2, y2),
        _ => false,
    }
}

fn arb_bpoly(dx: usize, dy: usize) -> impl Strategy<Value = BPoly> {
    proptest::collection::vec((-6i64..=6, 0..=dx, 0..=dy), 1..6).prop_map(|t| from_terms(&t))
}

/// Rational functions with a denominator that depends on `y`.
fn arb_rfunc() -> impl Strategy<Value = RFunc> {
    (arb_bpoly(2, 2), arb_bpoly(2, 3)).prop_filter_map("denominator free of y", |(p, q)| {
        (bpoly::deg_y(&q) > 0 && !p.is_zero()).then(|| RFunc::new(p, q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_trees_parse_back(e in arb_expr()) {
        let text = show(&e);
        let back = parse(&text).unwrap();
        prop_assert!(same_tree(&e, &back), "{}", text);
        if let Ok(f) = to_rfunc(&e) {
            prop_assert_eq!(parse_rfunc(&print_canonical(&f)).unwrap(), f);
        }
    }

    #[test]
    fn whitespace_is_insignificant(e in arb_expr()) {
        let text = show(&e);
        let spaced: String = text
            .chars()
            .flat_map(|c| if c.is_ascii_alphanumeric() { vec![c] } else { vec![' ', c, '\t'] })
            .collect();
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert!(same_tree(&parse(&spaced).unwrap(), &parse(&squeezed).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hermite_engines_agree(f in arb_rfunc()) {
        let outs: Vec<(RFunc, RFunc)> = Engine::ALL.iter().map(|&e| reduce_rfunc(&f, e).unwrap()).collect();
        prop_assert_eq!(&outs[0], &outs[1]);
        prop_assert_eq!(&outs[1], &outs[2]);
        let (g, r) = &outs[0];
        prop_assert_eq!(g.dy().add(r), f);
        prop_assert!(r.is_proper());
        // squarefree denominator in y
        let d = r.den();
        prop_assert_eq!(bpoly::deg_y(&bpoly::gcd(d, &bpoly::dy(d))), 0);
    }

    #[test]
    fn hermite_telescoping_and_az_agree(f in arb_rfunc()) {
        let ht = telescope(&f, &Options::default()).unwrap();
        let az = telescope(&f, &Options { method: Method::Az, ..Default::default() }).unwrap();
        prop_assert_eq!(&ht.op, &az.op);
        prop_assert!(verify_certificate(&f, &ht.op, &ht.certificate).unwrap());
        prop_assert!(verify_certificate(&f, &az.op, &az.certificate).unwrap());
        let no_bound = telescope(&f, &Options { lower_bound: false, ..Default::default() }).unwrap();
        prop_assert_eq!(&no_bound.op, &ht.op);
    }
}
