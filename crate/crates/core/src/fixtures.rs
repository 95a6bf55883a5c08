//! Bundled reference matrices and bounds.

use crate::gf2::BitMatrix;
use crate::metrics::WeightEnumerator;

pub const G32_1_TEXT: &str = include_str!("../fixtures/g32_1.txt");
pub const G32_2_TEXT: &str = include_str!("../fixtures/g32_2.txt");
pub const BOUNDS_TEXT: &str = include_str!("../fixtures/bounds.txt");

pub const G32_1_ENUMERATOR: &str = "1+124z^{8}+1152z^{10}+3584z^{12}+6016z^{14}+11014z^{16}+6016z^{18}+3584z^{20}+1152z^{22}+124z^{24}+z^{32}";
pub const G32_2_ENUMERATOR: &str = "1+116z^{8}+1216z^{10}+3360z^{12}+6464z^{14}+10454z^{16}+6464z^{18}+3360z^{20}+1216z^{22}+116z^{24}+z^{32}";

/// First even `[32,15,8]` code with dual distance 8.
pub fn g32_1() -> BitMatrix {
    BitMatrix::parse(G32_1_TEXT).expect("bundled matrix parses")
}

/// Second even `[32,15,8]` code with dual distance 8.
pub fn g32_2() -> BitMatrix {
    BitMatrix::parse(G32_2_TEXT).expect("bundled matrix parses")
}

pub fn g32_1_enumerator() -> WeightEnumerator {
    WeightEnumerator::parse_polynomial(32, G32_1_ENUMERATOR).expect("bundled enumerator parses")
}

pub fn g32_2_enumerator() -> WeightEnumerator {
    WeightEnumerator::parse_polynomial(32, G32_2_ENUMERATOR).expect("bundled enumerator parses")
}

/// `[7,4,3]` Hamming code.
pub fn hamming74() -> BitMatrix {
    BitMatrix::parse("1000011\n0100101\n0010110\n0001111\n").expect("literal parses")
}

/// One named check from [`verify_fixtures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Checks the two bundled `[32,15]` matrices: enumerators, evenness, distances,
/// rank, mutual inequivalence, and that neither extends to a `[33,15]` code
/// with dual distance 8.
pub fn verify_fixtures() -> crate::Result<Vec<FixtureCheck>> {
    use crate::{equivalence, extension, metrics};
    let mut out = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        out.push(FixtureCheck { name: name.to_string(), passed, detail });
    };
    let pairs = [("G32-1", g32_1(), g32_1_enumerator()), ("G32-2", g32_2(), g32_2_enumerator())];
    for (name, g, expected) in &pairs {
        let (code, _) = metrics::enumerators(g)?;
        check(&format!("{name} enumerator"), &code == expected, code.to_string());
        check(&format!("{name} rank"), g.rank() == 15 && g.rows() == 15, format!("rank {}", g.rank()));
        check(&format!("{name} even"), metrics::is_even(g), String::new());
        let d = metrics::min_distance(g)?;
        check(&format!("{name} minimum distance"), d == 8, format!("d = {d}"));
        let dd = metrics::dual_distance(g)?;
        check(&format!("{name} dual distance"), dd == 8, format!("dual distance {dd}"));
        let mask = extension::candidate_columns(g, 8)?;
        let mut extensions = 0;
        for b in mask.iter() {
            if metrics::dual_distance(&g.with_column(b))?.at_least(8) {
                extensions += 1;
            }
        }
        check(
            &format!("{name} has no [33,15] extension with dual distance 8"),
            extensions == 0,
            format!("{} admissible columns, {extensions} extensions", mask.count()),
        );
    }
    let eq = equivalence::are_equivalent(&pairs[0].1, &pairs[1].1)?;
    check("G32-1 and G32-2 inequivalent", !eq, String::new());
    Ok(out)
}
