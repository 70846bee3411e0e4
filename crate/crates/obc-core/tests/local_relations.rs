use obc_core::suites::relations::{aobc_relations, bubbles, obc_relations, slides};

#[test]
fn defining_relations_hold() {
    for rep in [obc_relations(&[1, 2, 3]), aobc_relations(&[1, 2, 3])] {
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn slide_relations_hold() {
    let rep = slides(&[1, 2, 3]);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn bubble_relations_hold() {
    let rep = bubbles(&[1, 2, 3]);
    assert!(rep.passed(), "{rep}");
}
