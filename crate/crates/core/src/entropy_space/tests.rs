use super::*;
use crate::causal_model::{build_bell_structure, build_line_structure};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn p4_coordinate_order() {
    let idx = CoordinateIndex::full(names(&["A", "X", "Y", "B"]));
    assert_eq!(
        idx.labels(),
        [
            "H(A)", "H(X)", "H(Y)", "H(B)", "H(AX)", "H(AY)", "H(AB)", "H(XY)", "H(XB)", "H(YB)",
            "H(AXY)", "H(AXB)", "H(AYB)", "H(XYB)", "H(AXYB)"
        ]
    );
    for n in 1..=8 {
        let idx = CoordinateIndex::full(line_names(n));
        assert_eq!(idx.len(), (1 << n) - 1);
    }
}

#[test]
fn elemental_counts() {
    let sys = elemental_shannon_system(&line_names(4)).unwrap();
    assert_eq!(sys.inequalities.len(), 28);
    assert_eq!(elemental_shannon_system(&line_names(5)).unwrap().inequalities.len(), 85);
    for n in 2..=8 {
        let sys = elemental_shannon_system(&line_names(n)).unwrap();
        assert_eq!(sys.inequalities.len(), n + n * (n - 1) * (1 << n) / 8);
        assert_eq!(sys.inequalities.len(), elemental_count(n));
    }
    assert!(elemental_shannon_system(&[]).is_err());
}

#[test]
fn elemental_two_variables() {
    let sys = elemental_shannon_system(&names(&["X", "Y"])).unwrap();
    let text: Vec<String> = sys.inequalities.iter().map(|f| f.render(&sys.index)).collect();
    assert_eq!(
        text,
        ["H(XY)-H(Y) >= 0", "H(XY)-H(X) >= 0", "H(X)+H(Y)-H(XY) >= 0"]
    );
    let one = elemental_shannon_system(&names(&["X"])).unwrap();
    assert_eq!(one.inequalities.len(), 1);
    assert_eq!(one.inequalities[0].render(&one.index), "H(X) >= 0");
}

#[test]
fn classical_ci_counts() {
    let p3 = build_line_structure(3).unwrap();
    assert_eq!(classical_ci_system(&p3).len(), 5);

    let bell = build_bell_structure();
    let idx = all_nodes_index(&bell);
    let rendered: Vec<String> = classical_ci_system(&bell).iter().map(|f| f.render(&idx)).collect();
    // X's parents are A and C, its other non-descendants Y and B
    let x = idx.mask(&["X"]).unwrap();
    let yb = idx.mask(&["Y", "B"]).unwrap();
    let ac = idx.mask(&["A", "C"]).unwrap();
    let expected = LinearForm::mutual_information(x, yb, ac).equality().render(&idx);
    assert!(rendered.contains(&expected), "{rendered:?}");
    // root A: unconditional independence from everything but its descendant X
    let a = idx.mask(&["A"]).unwrap();
    let ybc = idx.mask(&["Y", "B", "C"]).unwrap();
    let root = LinearForm::mutual_information(a, ybc, 0).equality().render(&idx);
    assert!(rendered.contains(&root));
}

#[test]
fn reduced_line_counts() {
    assert_eq!(reduced_line_system(4).unwrap().inequalities.len(), 10);
    assert_eq!(reduced_line_system(5).unwrap().inequalities.len(), 15);
    let two = reduced_line_system(2).unwrap();
    let text: Vec<String> = two.inequalities.iter().map(|f| f.render(&two.index)).collect();
    assert_eq!(text, ["H(X1X2)-H(X2) >= 0", "H(X1X2)-H(X1) >= 0", "H(X1)+H(X2)-H(X1X2) >= 0"]);
    assert!(reduced_line_system(0).is_err());
    assert!(reduced_line_system(3).unwrap().equalities.is_empty());
}

#[test]
fn contiguous_blocks() {
    for n in 1..=7 {
        let r = BlockReduction::contiguous(n).unwrap();
        assert_eq!(r.reduced.len(), n * (n + 1) / 2);
        let g = build_line_structure(n).unwrap();
        let from_g = BlockReduction::from_structure(&g);
        assert_eq!(from_g.reduced.subsets(), r.reduced.subsets());
    }
    let r = BlockReduction::contiguous(4).unwrap();
    // H(X1 X3 X4) = H(X1) + H(X3 X4)
    let s = r.full.position(0b1101).unwrap();
    let parts: Vec<u64> = r.decomposition[s].iter().map(|&k| r.reduced.subsets()[k]).collect();
    assert_eq!(parts, vec![0b0001, 0b1100]);
}

#[test]
fn subset_enumeration() {
    let all: Vec<u64> = subsets_of(0b1010).collect();
    assert_eq!(all, vec![0, 0b10, 0b1000, 0b1010]);
    assert_eq!(subsets_of(0).count(), 1);
}

#[test]
fn rendering_and_rows() {
    let idx = CoordinateIndex::full(names(&["A", "X", "Y"]));
    let f = LinearForm::mutual_information(0b010, 0b100, 0b001);
    assert_eq!(f.render(&idx), "H(AX)+H(AY)-H(AXY)-H(A) >= 0");
    let row = f.to_row(&idx).unwrap();
    assert_eq!(LinearForm::from_row(&row, &idx, Relation::NonNegative).to_row(&idx).unwrap(), row);
    let restricted = CoordinateIndex::restricted(names(&["A", "X", "Y"]), |s| s != 0b111).unwrap();
    assert!(f.to_row(&restricted).is_err());
}

#[test]
fn closure_contains_original_pieces() {
    let forms = elemental_closure(0b11, 0b1100, 0);
    assert_eq!(forms.len(), 16);
}
