use curv::curvature::CurvatureData;
use curv::exact::{parse_expr, ConstraintSystem, SignAssignment};
use curv::groebner::{ideal_from_components, OrderKind};
use curv::liealg::MetricLieAlgebra;
use curv::linalg::Mat;

#[test]
fn dump_sec31_bach() {
    let mut cs = ConstraintSystem::new();
    for n in ["g1", "g2", "g3", "g4", "g6"] {
        cs.declare_parameter(n, false, false).unwrap();
    }
    let signs = SignAssignment::new();
    let mut metric = Mat::zeros(4, 4);
    for (i, d) in [1i64, 1, 1, -1].iter().enumerate() {
        metric.set(i, i, parse_expr(&d.to_string(), &cs, &signs).unwrap());
    }
    let mut a = MetricLieAlgebra::new(4, cs, metric).unwrap();
    let table = [
        (0usize, 1usize, 2usize, "1"),
        (0, 3, 0, "g1"),
        (0, 3, 1, "g2"),
        (0, 3, 2, "g3"),
        (1, 3, 0, "g4"),
        (1, 3, 2, "g6"),
        (2, 3, 2, "g1"),
    ];
    for (i, j, k, e) in table {
        let v = parse_expr(e, &a.cs, &signs).unwrap();
        a.set_bracket(i, j, k, v).unwrap();
    }
    assert!(a.is_lie_algebra());
    let cd = CurvatureData::compute(&a).unwrap();
    let mut comps = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            comps.push(cd.bach.at(i, j).clone());
        }
    }
    let vars = ["g2", "g3", "g4", "g6", "g1"];
    let syms: Vec<_> = vars.iter().map(|v| a.cs.lookup(v).unwrap()).collect();
    let sys = ideal_from_components(&comps, &a.cs, &syms, OrderKind::Lex).unwrap();
    for g in &sys.generators {
        println!("GEN {}", g.render(&sys.variables));
    }
}
