//! The built-in identity catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constants::NamedConstant::{self, *};
use crate::expr::{Expr, exp_i_pi, i, im, int, li, mpl, named, rat, sc, sqrt};

use super::{Identity, Lhs, Rhs, W3Sample};

/// Seed of the sampled `w` values in `thm3_family`.
pub const THM3_SEED: u64 = 0x5EED;
pub const THM3_REAL: usize = 3;
pub const THM3_UNIMODULAR: usize = 3;
pub const THM3_INTERIOR: usize = 14;

fn c(n: NamedConstant) -> Expr {
    named(n)
}

fn pi() -> Expr {
    named(Pi)
}

fn ili(s: u32, p: Expr) -> Expr {
    im(li(s, p))
}

fn sqrt2_minus_1() -> Expr {
    sqrt(2, 1) - int(1)
}

fn one_minus_e8() -> Expr {
    int(1) - exp_i_pi(1, 4)
}

fn series(k: u32, z: Expr, factor: Expr) -> Lhs {
    Lhs::Series { k, z, factor }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &str,
    description: &str,
    lhs: Lhs,
    rhs: Expr,
    weight: u32,
    level: u32,
    anchor: &str,
    contour_w: Option<Expr>,
) -> Identity {
    Identity {
        id: id.into(),
        description: description.into(),
        lhs,
        rhs: Rhs::Closed(rhs),
        weight,
        level: Some(level),
        anchor: anchor.into(),
        min_digits: 40,
        contour_w,
    }
}

pub fn builtin_catalog() -> Vec<Identity> {
    let lam = || c(Lam);
    let lamu = || c(LamUpper);
    let lt = || c(LamTilde);
    let lut = || c(LamUpperTilde);
    let pd = || c(Pound);
    let sl = || c(ScriptL);
    let z3 = || c(Zeta3);

    let mut v = Vec::new();

    v.push(entry(
        "chudnovsky",
        "Σ_{n≥1} 1/(n³ C(3n,n) 2ⁿ)",
        Lhs::Chudnovsky,
        pi() * c(CatalanG) - sc(33, 16, z3()) + sc(1, 6, lam().pow(3))
            - sc(1, 24, pi().pow(2) * lam()),
        3,
        4,
        "Chudnovsky cubic binomial sum",
        None,
    ));

    v.push(entry(
        "chen_pos",
        "S₃(1)",
        series(3, int(1), int(1)),
        sc(32, 3, c(MathcalG))
            - sc(4, 3, pi() * li(2, int(2) - sqrt(3, 1)))
            - sc(1, 9, pi().pow(3))
            - sc(1, 3, pi() * (lam() - lut()).pow(2)),
        3,
        12,
        "S₃(1) ∈ i𝔷₃(12)",
        Some(exp_i_pi(1, 6)),
    ));

    let inv_phi3 = || sqrt(5, 1) - int(2);
    let inv_phi = || sc(1, 2, sqrt(5, 1) - int(1));
    v.push(entry(
        "chen_neg",
        "S₃(-1)",
        series(3, int(-1), int(1)),
        -sc(4, 3, li(3, inv_phi3())) - sc(4, 1, li(2, inv_phi3()) * pd()) + li(3, inv_phi())
            - sc(25, 3, pd().pow(3))
            + sc(6, 1, lam() * pd().pow(2))
            + sc(1, 10, pi().pow(2) * pd())
            + sc(12, 5, z3())
            - sc(1, 3, pi().pow(2) * lam()),
        3,
        10,
        "S₃(-1) ∈ 𝔷₃(10)",
        Some(inv_phi()),
    ));

    v.push(entry(
        "catalanlike",
        "Im Li₃((1+i)/2)",
        Lhs::Expr(ili(3, sc(1, 2, int(1) + i()))),
        -im(mpl(vec![2, 1], vec![i(), int(1)])) - sc(1, 2, c(CatalanG) * lam())
            + sc(1, 32, pi() * lam().pow(2))
            + sc(3, 128, pi().pow(3)),
        3,
        4,
        "Catalan-like constant 𝒢",
        None,
    ));

    v.push(entry(
        "s3_2",
        "√2 S₃(2)",
        series(3, int(2), sqrt(2, 1)),
        -sc(8, 1, ili(3, sc(1, 2, one_minus_e8())))
            - sc(4, 1, ili(3, i() * sqrt2_minus_1()))
            - sc(
                1,
                32,
                pi() * (sc(48, 1, li(2, sqrt2_minus_1())) - sc(12, 1, lam() * lt())
                    + sc(20, 1, lt().pow(2))
                    + sc(9, 1, lam().pow(2))),
            )
            + sc(15, 128, pi().pow(3)),
        3,
        8,
        "√2 S₃(2) ∈ i𝔷₃(8)",
        Some(exp_i_pi(1, 4)),
    ));

    v.push(entry(
        "s4_2",
        "√2 S₄(2)",
        series(4, int(2), sqrt(2, 1)),
        -sc(36, 1, ili(4, one_minus_e8()))
            - sc(12, 1, ili(4, sc(1, 2, one_minus_e8())))
            - sc(12, 1, ili(4, i() * one_minus_e8()))
            - sc(12, 1, ili(4, i() * sqrt2_minus_1()))
            - sc(9, 2, c(Beta4))
            - sc(14, 1, sqrt(2, 1) * c(L844))
            + sc(10, 3, pi() * sqrt(2, 1) * c(L823))
            - sc(9, 2, pi() * li(3, sqrt(1, 2)))
            + sc(63, 128, pi() * z3())
            + sc(
                1,
                256,
                pi() * (sc(78, 1, lam().pow(2) * lt())
                    - sc(12, 1, lam() * lt().pow(2))
                    - sc(24, 1, lt().pow(3))
                    + sc(47, 1, lam().pow(3))),
            )
            - sc(3, 1024, pi().pow(3) * (sc(141, 1, lam()) - sc(98, 1, lt()))),
        4,
        8,
        "√2 S₄(2) ∈ i𝔷₄(8)",
        Some(exp_i_pi(1, 4)),
    ));

    let p34 = || sc(1, 4, int(1) - i() * sqrt(3, 1));
    let p36 = || sc(1, 2, int(1) + i() * sqrt(1, 3));
    v.push(entry(
        "s3_3",
        "√3 S₃(3)",
        series(3, int(3), sqrt(3, 1)),
        -sc(8, 1, ili(3, p34())) - sc(5, 1, ili(3, p36()))
            + sc(1, 3, pi() * li(2, rat(1, 4)))
            + sc(1, 48, pi() * lamu().pow(2))
            - sc(7, 432, pi().pow(3)),
        3,
        6,
        "√3 S₃(3) ∈ i𝔷₃(6)",
        Some(exp_i_pi(1, 3)),
    ));

    v.push(entry(
        "s4_3",
        "√3 S₄(3)",
        series(4, int(3), sqrt(3, 1)),
        sc(8, 1, ili(4, sc(1, 4, int(3) + i() * sqrt(3, 1))))
            - sc(8, 1, ili(4, p34()))
            - sc(5, 1, ili(4, p36()))
            - sc(45, 16, sqrt(3, 1) * c(L324))
            + sc(1, 3, pi() * (li(3, rat(1, 3)) + li(3, rat(1, 4))))
            - sc(19, 36, pi() * z3())
            + sc(
                1,
                288,
                pi() * (sc(64, 1, lam().pow(3)) - sc(192, 1, lam().pow(2) * lamu())
                    + sc(144, 1, lam() * lamu().pow(2))
                    - sc(41, 1, lamu().pow(3))),
            )
            + sc(
                1,
                864,
                pi().pow(3) * (sc(144, 1, lam()) - sc(41, 1, lamu())),
            ),
        4,
        6,
        "√3 S₄(3) ∈ i𝔷₄(6)",
        Some(exp_i_pi(1, 3)),
    ));

    v.push(entry(
        "s3_4",
        "S₃(4)",
        series(3, int(4), int(1)),
        sc(4, 1, c(MathcalG)) - sc(1, 8, pi() * lam().pow(2)) - sc(1, 32, pi().pow(3)),
        3,
        4,
        "S₃(4) ∈ i𝔷₃(4)",
        None,
    ));

    v.push(entry(
        "s4_4",
        "S₄(4)",
        series(4, int(4), int(1)),
        sc(8, 1, ili(4, sc(1, 2, int(1) + i()))) - sc(4, 1, c(Beta4))
            + sc(1, 24, pi() * lam().pow(3))
            + sc(1, 32, pi().pow(3) * lam()),
        4,
        4,
        "S₄(4) ∈ i𝔷₄(4)",
        None,
    ));

    v.push(entry(
        "s3_m94",
        "S₃(-9/4)",
        series(3, rat(-9, 4), int(1)),
        sc(4, 3, li(3, rat(1, 3))) + sc(2, 1, li(3, rat(1, 4))) - sc(5, 9, z3())
            + sc(2, 1, li(2, rat(1, 4)) * lam())
            + sc(2, 9, sc(6, 1, lam().pow(3)) - lamu().pow(3))
            - sc(1, 9, pi().pow(2) * (sc(3, 1, lam()) - sc(2, 1, lamu()))),
        3,
        6,
        "S₃(-9/4) ∈ 𝔷₃(6)",
        Some(rat(1, 2)),
    ));

    v.push(entry(
        "s4_m94",
        "S₄(-9/4)",
        series(4, rat(-9, 4), int(1)),
        sc(80, 9, li(4, rat(1, 2))) - sc(40, 3, li(4, rat(1, 3)))
            + sc(8, 1, li(4, rat(2, 3)))
            + sc(7, 2, li(4, rat(1, 4)))
            + sc(5, 6, li(4, rat(1, 9)))
            + sc(4, 1, li(3, rat(1, 3)) * lam())
            + sc(3, 1, li(3, rat(1, 4)) * lam())
            - sc(50, 9, z3() * lam())
            - sc(
                1,
                27,
                sc(35, 1, lam().pow(4)) - sc(54, 1, lam().pow(2) * lamu().pow(2))
                    + sc(54, 1, lam() * lamu().pow(3))
                    - sc(9, 1, lamu().pow(4)),
            )
            - sc(
                1,
                54,
                pi().pow(2) * lam() * (sc(11, 1, lam()) - sc(36, 1, lamu())),
            )
            - sc(101, 1620, pi().pow(4)),
        4,
        6,
        "S₄(-9/4) ∈ 𝔷₄(6)",
        Some(rat(1, 2)),
    ));

    v.push(entry(
        "s3_m4",
        "S₃(-4)",
        series(3, int(-4), int(1)),
        -sc(2, 1, li(3, sqrt2_minus_1())) + sc(4, 3, sqrt(2, 1) * c(L823)) + sc(25, 16, z3())
            - sc(2, 1, li(2, sqrt2_minus_1()) * lt())
            - sc(2, 3, lt().pow(3))
            + sc(1, 2, lam() * lt().pow(2))
            - sc(1, 8, pi().pow(2) * lam()),
        3,
        8,
        "S₃(-4) ∈ 𝔷₃(8)",
        Some(sqrt2_minus_1()),
    ));

    let one_m_is2 = || int(1) - sqrt(1, 2);
    v.push(entry(
        "s4_m4",
        "S₄(-4)",
        series(4, int(-4), int(1)),
        sc(40, 7, li(4, one_m_is2()))
            + sc(4, 21, li(4, sqrt2_minus_1()))
            + sc(4, 7, li(4, sqrt(1, 2)))
            - sc(27, 28, li(4, rat(1, 2)))
            - sc(59, 14, li(4, sqrt2_minus_1().pow(2)))
            + sc(19, 84, li(4, sqrt2_minus_1().pow(4)))
            - sc(2, 21, li(4, sc(1, 2, one_m_is2())))
            + sc(8, 3, sqrt(2, 1) * c(L823) * lt())
            - sc(4, 1, li(3, sqrt(1, 2)) * lt())
            + sc(7, 16, z3() * lt())
            + sc(
                1,
                4032,
                sc(600, 1, lam().pow(3) * lt())
                    + sc(1224, 1, lam().pow(2) * lt().pow(2))
                    + sc(96, 1, lam() * lt().pow(3))
                    - sc(752, 1, lt().pow(4))
                    - sc(177, 1, lam().pow(4)),
            )
            - sc(
                1,
                504,
                pi().pow(2)
                    * (sc(189, 1, lam() * lt()) - sc(61, 1, lt().pow(2)) - sc(30, 1, lam().pow(2))),
            )
            + sc(11, 7560, pi().pow(4)),
        4,
        8,
        "S₄(-4) ∈ 𝔷₄(8)",
        Some(sqrt2_minus_1()),
    ));

    v.push(entry(
        "s3_m12",
        "√2 S₃(-1/2)",
        series(3, rat(-1, 2), sqrt(2, 1)),
        -sc(80, 1, li(3, sqrt(1, 2))) + sc(64, 1, sqrt(2, 1) * c(L823)) + sc(35, 4, z3())
            - sc(20, 1, li(2, sqrt2_minus_1()) * lam())
            + sc(10, 1, lam().pow(2) * lt())
            - sc(10, 1, lam() * lt().pow(2))
            + sc(5, 3, lam().pow(3))
            - sc(15, 4, pi().pow(2) * lam()),
        3,
        8,
        "√2 S₃(-1/2) ∈ 𝔷₃(8)",
        Some(sqrt(1, 2)),
    ));

    v.push(entry(
        "s4_m12",
        "√2 S₄(-1/2)",
        series(4, rat(-1, 2), sqrt(2, 1)),
        sc(1669, 14, li(4, rat(1, 2)))
            - sc(2112, 7, li(4, one_m_is2()))
            - sc(704, 21, li(4, sqrt2_minus_1()))
            + sc(24, 7, li(4, sqrt(1, 2)))
            + sc(1510, 7, li(4, sqrt2_minus_1().pow(2)))
            - sc(475, 42, li(4, sqrt2_minus_1().pow(4)))
            + sc(352, 21, li(4, sc(1, 2, one_m_is2())))
            - sc(100, 1, li(3, sqrt(1, 2)) * lam())
            + sc(224, 3, sqrt(2, 1) * c(L823) * lam())
            + sc(175, 16, z3() * lam())
            + sc(
                2,
                63,
                sc(99, 1, lam().pow(3) * lt())
                    - sc(297, 1, lam().pow(2) * lt().pow(2))
                    - sc(132, 1, lam() * lt().pow(3))
                    + sc(299, 1, lt().pow(4))
                    + sc(309, 1, lam().pow(4)),
            )
            + sc(
                1,
                252,
                pi().pow(2)
                    * (sc(1848, 1, lam() * lt())
                        - sc(1336, 1, lt().pow(2))
                        - sc(2115, 1, lam().pow(2))),
            )
            + sc(397, 3780, pi().pow(4)),
        4,
        8,
        "√2 S₄(-1/2) ∈ 𝔷₄(8)",
        Some(sqrt(1, 2)),
    ));

    v.push(entry(
        "s3_m165",
        "√5 S₃(-16/5)",
        series(3, rat(-16, 5), sqrt(5, 1)),
        sc(5, 4, li(3, rat(1, 5))) + sc(27, 2, li(3, inv_phi()))
            - sc(10, 1, li(3, sqrt(1, 5)))
            - sc(27, 20, z3())
            + sc(
                5,
                8,
                (li(2, rat(1, 5)) - sc(4, 1, li(2, sqrt(1, 5)))) * sl(),
            )
            - sc(9, 2, pd().pow(3))
            + sc(27, 20, pi().pow(2) * pd())
            - sc(5, 16, pi().pow(2) * sl()),
        3,
        10,
        "√5 S₃(-16/5) ∈ 𝔷₃(10)",
        Some(sqrt(1, 5)),
    ));

    let s3 = || sqrt(3, 1);
    v.push(entry(
        "s3_m43",
        "√3 S₃(-4/3)",
        series(3, rat(-4, 3), sqrt(3, 1)),
        -sc(21, 10, li(3, rat(1, 3)))
            - sc(7, 40, li(3, rat(1, 4)))
            - li(3, sc(1, 2, s3() - int(1)))
            + sc(11, 20, li(3, int(1) - sc(1, 2, s3())))
            + sc(9, 5, li(3, sc(1, 3, int(2) - s3())))
            - sc(7, 1, li(3, int(2) - s3()))
            + sc(24, 5, li(3, sc(2, 1, s3()) - int(3)))
            + sc(11, 5, li(3, sc(3, 1, s3()) - int(5)))
            + sc(3, 5, s3() * c(L1243))
            + sc(39, 10, z3())
            + sc(3, 8, li(2, rat(1, 4)) * lamu())
            - sc(3, 1, li(2, sc(1, 2, s3() - int(1))) * lamu())
            - sc(3, 1, li(2, int(2) - s3()) * lamu())
            - sc(17, 80, lam().pow(2) * lut())
            + sc(71, 80, lam() * lut().pow(2))
            - sc(3, 4, lam() * lamu() * lut())
            - sc(3, 20, lamu().pow(2) * lut())
            + sc(21, 40, lamu() * lut().pow(2))
            - sc(209, 240, lut().pow(3))
            + sc(13, 80, lam().pow(3))
            + sc(3, 8, lam().pow(2) * lamu())
            + sc(1, 20, lamu().pow(3))
            + sc(7, 40, pi().pow(2) * lut())
            - sc(7, 20, pi().pow(2) * lam())
            - sc(7, 80, pi().pow(2) * lamu()),
        3,
        12,
        "√3 S₃(-4/3) ∈ 𝔷₃(12)",
        Some(sqrt(1, 3)),
    ));

    v.push(entry(
        "f32_k2",
        "(3/2) S₂(-9/4)",
        series(2, rat(-9, 4), rat(3, 2)),
        -sc(2, 1, li(2, rat(1, 2)) - li(2, rat(-1, 2))) - sc(2, 1, lam() * lamu())
            + sc(1, 2, pi().pow(2)),
        2,
        6,
        "₃F₂ reduction at w = 1/2",
        Some(rat(1, 2)),
    ));

    v.push(entry(
        "s1_classical",
        "S₁(1)",
        series(1, int(1), int(1)),
        sc(2, 3, pi() * sqrt(1, 3)),
        1,
        6,
        "arcsine evaluation S₁(1) = 2π/(3√3)",
        None,
    ));

    v.push(Identity {
        id: "thm3_family".into(),
        description:
            "Σ (-1)ⁿ x^{2n+1}/((2n+1)³ C(2n,n)), x = (1-w²)/w, against the Li₂/Li₃ evaluation"
                .into(),
        lhs: Lhs::Theorem3Family(thm3_samples()),
        rhs: Rhs::Theorem3Family,
        weight: 3,
        level: None,
        anchor: "Li₂/Li₃ evaluation, 20 seeded w".into(),
        min_digits: 30,
        contour_w: None,
    });

    v
}

/// Sampled admissible `w`: real points in `(√2-1, 1)`, points on the unit
/// circle, then interior points of the region.
pub fn thm3_samples() -> Vec<W3Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(THM3_SEED);
    let mut out = Vec::with_capacity(THM3_REAL + THM3_UNIMODULAR + THM3_INTERIOR);
    let lo = std::f64::consts::SQRT_2 - 1.0;
    for _ in 0..THM3_REAL {
        out.push(W3Sample::Real(rng.gen_range(lo + 0.01..0.99)));
    }
    for _ in 0..THM3_UNIMODULAR {
        let theta: f64 = rng.gen_range(0.1..1.45);
        out.push(W3Sample::Unimodular(theta));
    }
    while out.len() < THM3_REAL + THM3_UNIMODULAR + THM3_INTERIOR {
        let r: f64 = rng.gen_range(0.45..0.97);
        let theta: f64 = rng.gen_range(0.05..1.5);
        let (re, im) = (r * theta.cos(), r * theta.sin());
        // |1 - w²| < 1.9 |w| keeps the point off the boundary
        let (u, v) = (1.0 - (re * re - im * im), -2.0 * re * im);
        if (u * u + v * v).sqrt() < 1.9 * r {
            out.push(W3Sample::Interior(re, im));
        }
    }
    out
}
