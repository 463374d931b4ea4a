//! Published `PSU₃(8)` search output, kept as regression constants.

use serde::Serialize;

pub const PSU38_ORDER: u64 = 5_515_776;
pub const PSU38_OUT_ORDER: u64 = 18;

/// `<p, a, b, |A|, |B|, |A ∩ B|, [P:Inn]>` from the overgroup search.
pub const CODE3_TUPLE: [u64; 7] = [8, 127, 217, 513, 96768, 1, 9];
/// Counts of solvable `G` and of normal subgroups of each order.
pub const PART1_COUNT: u64 = 1;
pub const PART2_COUNTS: [u64; 2] = [1, 1];
/// `<|K_f ∩ K_h|, G/K_f ≅ A, G/K_h ≅ B>`
pub const PART2_CHECK: (u64, bool, bool) = (1, true, true);
pub const KF_ORDER: u64 = 10752;
pub const KH_ORDER: u64 = 57;

/// Each identity the constants must satisfy.
#[derive(Clone, Debug, Serialize)]
pub struct Psu38Check {
    pub name: &'static str,
    pub passed: bool,
}

pub fn psu38_checks() -> Vec<Psu38Check> {
    let [_, _, _, a, b, meet, index] = CODE3_TUPLE;
    let n = PSU38_ORDER;
    let check = |name, passed| Psu38Check { name, passed };
    vec![
        check("|A||B| = [P:Inn]·|N|·|A∩B|", a * b == index * n * meet),
        check("|A||B| = 49641984", a * b == 49_641_984),
        check("|N|/|A| = |K_f|", n.is_multiple_of(a) && n / a == KF_ORDER),
        check("|N|/|B| = |K_h|", n.is_multiple_of(b) && n / b == KH_ORDER),
        check("K_f ∩ K_h = 1 with both quotients matching", PART2_CHECK.0 == 1 && PART2_CHECK.1 && PART2_CHECK.2),
        check("[P:Inn] divides |Out(N)|", PSU38_OUT_ORDER.is_multiple_of(index)),
        check("|A|, |B| divide |N|", n.is_multiple_of(a) && n.is_multiple_of(b)),
        check("unique G and kernels", PART1_COUNT == 1 && PART2_COUNTS == [1, 1]),
        check("|N| = 8³(8³+1)(8²−1)/gcd(3, 8+1)", 512 * 513 * 63 / 3 == n),
    ]
}
