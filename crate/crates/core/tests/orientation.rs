use rigpack::orientation::{robust_arc_strong, verify_arc, RobustOptions};
use rigpack::{MultiGraph, SetFunc};

#[test]
fn k13_robust_orientation_reverifies() {
    let g = MultiGraph::complete(13);
    let out = robust_arc_strong(&g, 1, RobustOptions::default()).unwrap();
    let d = &out.orientation;
    assert!(d.is_smooth());
    assert!(d.arc_strong_connectivity().at_least(3));
    assert!(verify_arc(d, &SetFunc::constant(3), None).unwrap().holds);
    assert_eq!(d.fragile_vertex(1), None);
    assert_eq!(out.tree.len(), 12);
    assert!(out.hypothesis.unwrap().holds);
}
