mod common;

use partcover_core::constraints::CostVector;
use partcover_core::constraints::PartitionProportions;
use partcover_core::exact::{brute_force_scp, brute_force_smp};
use partcover_core::instances::{
    assign_costs, edge_list_instance, gen_hardness, gen_logdet, gen_random_graph, gen_synthetic_setcover,
    parse_edge_list, toy_instance, GraphKind, ObjectiveSpec, SyntheticParams,
};
use partcover_core::maximize::standard_greedy_partition;
use partcover_core::{ElementSet, Error, QueryCountedOracle, SetFunction};

#[test]
fn hardness_instances_hit_their_formulas() {
    for k in [vec![2, 2], vec![3, 3], vec![2, 2, 2], vec![2, 3]] {
        for eps in [0.05, 0.25] {
            let inst = gen_hardness(&k, eps).unwrap();
            let f = inst.build_objective().unwrap();
            let ground = inst.ground().unwrap();
            let oracle = QueryCountedOracle::new(&f);
            let greedy = standard_greedy_partition(&oracle, &ground, &k).unwrap();
            let opt = brute_force_smp(&oracle, &ground, &k).unwrap();
            let k1 = k[0] as f64;
            assert!((greedy.f_value - k1 * (0.5 + eps)).abs() < 1e-12, "{k:?} {eps}");
            assert!((opt.value - k1).abs() < 1e-12);
        }
    }
    assert!(gen_hardness(&[2], 0.1).is_err());
    assert!(gen_hardness(&[2, 2], 0.5).is_err());
}

#[test]
fn toy_greedy_and_optimum() {
    let inst = toy_instance();
    let f = inst.build_objective().unwrap();
    let oracle = QueryCountedOracle::new(&f);
    let ground = inst.ground().unwrap();
    let greedy = standard_greedy_partition(&oracle, &ground, &[2, 2]).unwrap();
    assert_eq!(greedy.f_value, 2.0);
    assert_eq!(brute_force_smp(&oracle, &ground, &[2, 2]).unwrap().value, 4.0);
}

#[test]
fn synthetic_default_sizes() {
    let inst = gen_synthetic_setcover(1, SyntheticParams::default()).unwrap();
    let ground = inst.ground().unwrap();
    let sizes: Vec<usize> = (0..5).map(|j| ground.group_size(j)).collect();
    assert_eq!(sizes, vec![200, 240, 280, 320, 360]);
}

#[test]
fn synthetic_shared_block_has_no_second_gain() {
    let params = SyntheticParams {
        groups: 3,
        base: 5,
        increment: 2,
        block: 3,
        tags_per_element: 4,
    };
    let inst = gen_synthetic_setcover(2, params).unwrap();
    let f = inst.build_objective().unwrap();
    let ground = inst.ground().unwrap();
    let block = &ground.members(1)[..3];
    let one = f.eval(&ElementSet::from_elements(inst.n(), &block[..1])).unwrap();
    let all = f.eval(&ElementSet::from_elements(inst.n(), block)).unwrap();
    assert_eq!(one, all);
}

#[test]
fn small_synthetic_is_solvable_exactly() {
    let params = SyntheticParams {
        groups: 3,
        base: 4,
        increment: 2,
        block: 3,
        tags_per_element: 2,
    };
    let inst = gen_synthetic_setcover(3, params).unwrap();
    assert_eq!(inst.n(), 18);
    let f = inst.build_objective().unwrap();
    let ground = inst.ground().unwrap();
    let oracle = QueryCountedOracle::new(&f);
    let caps = [2, 2, 2];
    let opt = brute_force_smp(&oracle, &ground, &caps).unwrap();
    let greedy = standard_greedy_partition(&oracle, &ground, &caps).unwrap();
    assert!(greedy.f_value <= opt.value);
    assert!(greedy.f_value >= 0.5 * opt.value);
    let p = PartitionProportions::new(vec![0.3, 0.3, 0.4]).unwrap();
    let tau = f.eval(&ElementSet::universe(18)).unwrap() * 0.5;
    assert!(brute_force_scp(&oracle, &ground, &p, tau).is_ok());
}

#[test]
fn generators_are_deterministic() {
    let a = gen_random_graph(7, 10, 20, 2, (1.0, 1.0), GraphKind::Cut).unwrap();
    let b = gen_random_graph(7, 10, 20, 2, (1.0, 1.0), GraphKind::Cut).unwrap();
    assert_eq!(a, b);
    let c = gen_random_graph(8, 10, 20, 2, (1.0, 1.0), GraphKind::Cut).unwrap();
    assert_ne!(a, c);
    assert_eq!(
        gen_logdet(1, 8, 3, 2, 0.5).unwrap(),
        gen_logdet(1, 8, 3, 2, 0.5).unwrap()
    );
    assert_eq!(
        gen_synthetic_setcover(4, SyntheticParams::default()).unwrap(),
        gen_synthetic_setcover(4, SyntheticParams::default()).unwrap()
    );
}

#[test]
fn complete_graph_when_all_pairs_requested() {
    let inst = gen_random_graph(1, 6, 15, 2, (1.0, 2.0), GraphKind::Coverage).unwrap();
    let ObjectiveSpec::VertexCoverage { edges, .. } = &inst.objective else {
        unreachable!()
    };
    assert_eq!(edges.len(), 15);
    assert!(gen_random_graph(1, 6, 16, 2, (1.0, 2.0), GraphKind::Cut).is_err());
}

#[test]
fn costs_in_range_and_reproducible() {
    let inst = gen_random_graph(3, 20, 40, 3, (1.0, 1.0), GraphKind::Cut).unwrap();
    let a = assign_costs(&inst, 5, 0.001, 10.0).unwrap();
    let b = assign_costs(&inst, 5, 0.001, 10.0).unwrap();
    assert_eq!(a, b);
    let costs = a.costs.clone().unwrap();
    assert!(costs.iter().all(|&c| (0.001..=10.0).contains(&c)));
    let unit = assign_costs(&inst, 5, 1.0, 1.0).unwrap();
    assert_eq!(unit.cost_vector().unwrap(), Some(CostVector::unit(20)));
    assert!(matches!(
        assign_costs(&inst, 5, 0.0, 1.0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn edge_lists_parse_and_merge() {
    let text = "# comment\n0 1\n1 2 2.5\n\n2 0\n1 0\n";
    let list = parse_edge_list(text).unwrap();
    assert_eq!(list.n, 3);
    let inst = edge_list_instance("tri", &list, 2, 1, GraphKind::Cut).unwrap();
    let f = inst.build_objective().unwrap();
    // edge 0-1 appears twice and merges to weight 2
    assert_eq!(f.eval(&ElementSet::from_elements(3, &[0])).unwrap(), 3.0);
    assert!(matches!(
        parse_edge_list("0 1\n1 2 heavy\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(parse_edge_list("# nothing\n").is_err());
}
