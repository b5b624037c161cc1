//! Published ray tables and facet families used to label and check output.

use crate::entropy_space::{LinearForm, Subset};

/// Extremal rays of the four-node line cone, coordinates
/// `A X Y B AX AY AB XY XB YB AXY AXB AYB XYB AXYB`.
pub const LINE4_RAYS: [[i64; 15]; 10] = [
    [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3],
    [0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2],
    [1, 1, 1, 0, 2, 2, 1, 2, 1, 1, 2, 2, 2, 2, 2],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1],
    [0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1],
];

/// Extremal rays of the doubled three-node line on its marginal scenario,
/// coordinates `X0 X1 Y Z0 Z1 X0Y X0Z0 X0Z1 X1Y X1Z0 X1Z1 YZ0 YZ1 X0YZ0
/// X0YZ1 X1YZ0 X1YZ1`.
pub const DOUBLED3_RAYS: [[i64; 17]; 20] = [
    [1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [0, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [0, 1, 1, 0, 1, 1, 0, 1, 2, 1, 2, 1, 2, 1, 2, 2, 2],
    [0, 1, 1, 1, 0, 1, 1, 0, 2, 2, 1, 2, 1, 2, 1, 2, 2],
    [1, 0, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2],
    [1, 0, 1, 0, 1, 2, 1, 2, 1, 0, 1, 1, 2, 2, 2, 1, 2],
    [1, 0, 1, 1, 0, 2, 2, 1, 1, 1, 0, 2, 1, 2, 2, 2, 1],
    [1, 1, 1, 0, 1, 2, 1, 2, 2, 1, 2, 1, 2, 2, 2, 2, 2],
    [1, 1, 1, 1, 0, 2, 2, 1, 2, 2, 1, 2, 1, 2, 2, 2, 2],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1],
    [1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1],
    [0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
];

// ground positions of X0 X1 Y Z0 Z1
const X0: Subset = 1;
const X1: Subset = 2;
const Y: Subset = 4;
const Z0: Subset = 8;
const Z1: Subset = 16;

fn h(s: Subset) -> LinearForm {
    LinearForm::entropy(s)
}

fn hc(s: Subset, given: Subset) -> LinearForm {
    LinearForm::conditional_entropy(s, given)
}

/// The non-Shannon families of the doubled three-node line, one
/// representative each; the last is an equality.
pub fn doubled3_families() -> Vec<LinearForm> {
    vec![
        hc(X1, Y | Z1)
            .plus(&hc(Z0, X1 | Y))
            .plus(&hc(Z1, X0 | Y))
            .minus(&hc(Z0, X0 | Y)),
        hc(X0, Y | Z1)
            .plus(&hc(Z0, Y | X1))
            .minus(&hc(X0, Y | Z0))
            .plus(&h(X0 | Y))
            .minus(&h(X0 | Z0)),
        hc(Y, X0 | Z0).plus(&hc(X1, Y | Z1)).minus(&hc(X1, Y | Z0)),
        hc(X1, Y | Z0)
            .plus(&h(X0 | Y))
            .plus(&h(Y | Z1))
            .minus(&h(X1 | Y))
            .minus(&h(X0 | Z1)),
        h(X0 | Y | Z1)
            .plus(&h(X1 | Y | Z0))
            .minus(&h(X1 | Y | Z1))
            .minus(&h(X0 | Z0)),
        hc(X0, Y | Z1).plus(&h(Y | Z0)).minus(&h(X0 | Z0)),
        LinearForm::mutual_information(X0, Z0, 0).equality(),
    ]
}

/// Ground permutations generating the symmetries of the doubled line:
/// `X0 <-> X1`, `Z0 <-> Z1` and `X <-> Z`.
pub const DOUBLED3_SYMMETRIES: [[usize; 5]; 3] = [[1, 0, 2, 3, 4], [0, 1, 2, 4, 3], [3, 4, 2, 0, 1]];

/// Lower-case roman numeral in parentheses, `(i)`, `(ii)`, ...
pub fn roman_label(k: usize) -> String {
    const TABLE: [(usize, &str); 9] = [
        (100, "c"),
        (90, "xc"),
        (50, "l"),
        (40, "xl"),
        (10, "x"),
        (9, "ix"),
        (5, "v"),
        (4, "iv"),
        (1, "i"),
    ];
    let mut n = k;
    let mut s = String::from("(");
    for &(v, r) in &TABLE {
        while n >= v {
            s.push_str(r);
            n -= v;
        }
    }
    s.push(')');
    s
}
