use raagout_core::decompose::{decompose, Descriptor};
use raagout_core::families::*;
use raagout_core::vcd::{certify_lower_bound, vcd_report, DimProviderConfig};
use raagout_core::{DefiningGraph, LaurenceGenerator, PeripheralPair};

fn bounds(d: &Descriptor, script: Option<&[raagout_core::ScriptOp]>) -> (Option<usize>, Option<usize>) {
    let gens = known_lower_generators(&d.graph, &d.periph);
    let (_, b, _) = vcd_report(d, script, &DimProviderConfig::default(), gens.as_deref(), 2).unwrap();
    (b.upper, b.lower)
}

#[test]
fn diamonds_auto_and_script_agree() {
    for d in 2..=3 {
        let desc = Descriptor::absolute(diamonds(d));
        let want = Some(diamonds_vcd(d));
        assert_eq!(bounds(&desc, None), (want, want));
        assert_eq!(bounds(&desc, Some(&diamonds_script(d))), (want, want));
    }
}

#[test]
fn diamonds_trivial_on_last_vertex() {
    for d in 2..=3 {
        let g = diamonds(d);
        let cd = g.set_of(&[format!("c{d}")]).unwrap();
        let desc = Descriptor::new(g, PeripheralPair::new(vec![], vec![cd])).unwrap();
        let want = Some(4 * d - 2);
        assert_eq!(bounds(&desc, None), (want, want));
    }
}

#[test]
fn four_path_auto_matches_formula() {
    for (p, q, r, s) in [(1, 1, 1, 1), (2, 1, 2, 1), (1, 2, 1, 3)] {
        let desc = Descriptor::absolute(four_path(p, q, r, s));
        let want = Some(four_path_vcd(p, q, r, s));
        assert_eq!(bounds(&desc, None), (want, want), "({p},{q},{r},{s})");
    }
}

#[test]
fn complete_graphs_have_triangle_count() {
    for n in 2..=5 {
        let labels: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (labels[i].clone(), labels[j].clone()))
            .collect();
        let g = DefiningGraph::new(&labels, &edges).unwrap();
        let tri: Vec<LaurenceGenerator> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| LaurenceGenerator::Transvection { moved: j, acting: i }))
            .collect();
        let (_, b, c) = vcd_report(&Descriptor::absolute(g), None, &DimProviderConfig::default(), Some(&tri), 1).unwrap();
        assert_eq!(b.upper, Some(n * (n - 1) / 2));
        assert_eq!(c.unwrap().rank, n * (n - 1) / 2);
    }
}

#[test]
fn dependent_generators_are_rejected() {
    let g = diamonds(2);
    let mut gens = diamonds_lower_generators(&g, 2, false);
    // the complementary partial conjugation is the inverse modulo inner
    let a1 = g.vertex("a1").unwrap();
    let rest = g.all().minus(g.star(a1));
    if let LaurenceGenerator::PartialConj { acting, k } = pc_on_component_of(&g, a1, g.vertex("b1").unwrap()) {
        gens.push(LaurenceGenerator::PartialConj { acting, k: rest.minus(k) });
    }
    let err = certify_lower_bound(&g, &gens, 1).unwrap_err().to_string();
    assert!(err.contains("is inner"), "{err}");
}

#[test]
fn script_trees_have_expected_shape() {
    let t = decompose(&Descriptor::absolute(four_path(2, 2, 2, 2)), Some(&four_path_script(2, 2, 2, 2))).unwrap();
    let (restricts, projects, leaves) = t.count_steps();
    assert_eq!((restricts, projects), (4, 2));
    assert_eq!(leaves, 5);
}
