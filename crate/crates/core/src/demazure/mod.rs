//! Polynomials in `x, y` over `Q(j)` with the reflection action of `G4` and
//! its Demazure operators `δ1, δ2`, defined by `s_i·p − p = ℓ_i · δ_i(p)`
//! with `ℓ1 = y` and `ℓ2 = x + y`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff::CycloQ3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DemazureError {
    #[error("no reflection s{0}; G4 has s1 and s2")]
    BadIndex(usize),
    #[error("{divisor} does not divide; remainder {remainder}")]
    NotDivisible { divisor: String, remainder: String },
    #[error("{what}: computed {computed}, expected {expected}")]
    Mismatch {
        what: String,
        computed: String,
        expected: String,
    },
}

/// Exponents `(a, b)` of `x^a y^b`.
pub type Exponent = (u32, u32);

/// A polynomial in `Q(j)[x, y]` with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2(BTreeMap<Exponent, CycloQ3>);

/// Graded lexicographic key with `x > y`.
fn grlex((a, b): Exponent) -> (u32, u32) {
    (a + b, a)
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: CycloQ3) -> Self {
        Self::monomial(c, (0, 0))
    }

    pub fn monomial(c: CycloQ3, e: Exponent) -> Self {
        let mut p = Poly2::zero();
        p.add_term(e, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(CycloQ3::one(), (1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(CycloQ3::one(), (0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CycloQ3)> {
        self.0.iter()
    }

    pub fn coeff(&self, e: Exponent) -> CycloQ3 {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponent, c: CycloQ3) {
        let sum = &self.coeff(e) + &c;
        if sum.is_zero() {
            self.0.remove(&e);
        } else {
            self.0.insert(e, sum);
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.scale(&-CycloQ3::one()))
    }

    pub fn scale(&self, k: &CycloQ3) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.0 {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a, b), c) in &self.0 {
            for ((a2, b2), c2) in &other.0 {
                out.add_term((a + a2, b + b2), c * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        (0..n).fold(Poly2::constant(CycloQ3::one()), |acc, _| acc.mul(self))
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(|(a, b)| a + b).max()
    }

    /// Leading term in graded lexicographic order.
    fn leading(&self) -> Option<(Exponent, &CycloQ3)> {
        self.0
            .iter()
            .max_by_key(|(e, _)| grlex(**e))
            .map(|(e, c)| (*e, c))
    }
}

impl fmt::Display for Poly2 {
    /// Terms in decreasing graded lexicographic order, e.g. `(2 + j) x^2 y + (-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(grlex(**e)));
        for (i, ((a, b), c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = [("x", *a), ("y", *b)]
                .into_iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| {
                    if e == 1 {
                        v.to_owned()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{}", mono.join(" "))?,
                (false, false) => write!(f, "({c}) {}", mono.join(" "))?,
            }
        }
        Ok(())
    }
}

/// `αx + βy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub x: CycloQ3,
    pub y: CycloQ3,
}

impl LinearForm {
    pub fn to_poly(&self) -> Poly2 {
        Poly2::x().scale(&self.x).add(&Poly2::y().scale(&self.y))
    }
}

/// Quotient of `p` by `ℓ` by long division; the remainder must vanish.
pub fn exact_divide(p: &Poly2, l: &LinearForm) -> Result<Poly2, DemazureError> {
    let divisor = l.to_poly();
    let (lead_e, lead_c) = divisor
        .leading()
        .ok_or_else(|| DemazureError::NotDivisible {
            divisor: "0".into(),
            remainder: p.to_string(),
        })?;
    let lead_c = lead_c.clone();
    let inv = lead_c.inv().expect("nonzero leading coefficient");
    let mut rest = p.clone();
    let mut quotient = Poly2::zero();
    let mut remainder = Poly2::zero();
    while let Some(((a, b), c)) = rest.leading().map(|(e, c)| (e, c.clone())) {
        if a >= lead_e.0 && b >= lead_e.1 {
            let k = &c * &inv;
            let shift = (a - lead_e.0, b - lead_e.1);
            for (e, d) in divisor.terms() {
                rest.add_term((e.0 + shift.0, e.1 + shift.1), -(&k * d));
            }
            quotient.add_term(shift, k);
        } else {
            rest.add_term((a, b), -&c);
            remainder.add_term((a, b), c);
        }
    }
    if remainder.is_zero() {
        Ok(quotient)
    } else {
        Err(DemazureError::NotDivisible {
            divisor: divisor.to_string(),
            remainder: remainder.to_string(),
        })
    }
}

fn cq(a: i64, b: i64, c: i64) -> CycloQ3 {
    // a + b j + c j^2
    &CycloQ3::from_ints(a, b) + &CycloQ3::j2().scale(&BigRational::from_integer(c.into()))
}

/// `a + b j + c j²`.
pub fn cyclo(a: i64, b: i64, c: i64) -> CycloQ3 {
    cq(a, b, c)
}

/// The reflection `s_i` as the images of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionAction {
    pub image_x: LinearForm,
    pub image_y: LinearForm,
}

impl ReflectionAction {
    pub fn g4(i: usize) -> Result<Self, DemazureError> {
        let third = BigRational::new(1.into(), 3.into());
        match i {
            1 => Ok(ReflectionAction {
                image_x: LinearForm {
                    x: CycloQ3::one(),
                    y: CycloQ3::zero(),
                },
                image_y: LinearForm {
                    x: CycloQ3::zero(),
                    y: CycloQ3::j(),
                },
            }),
            2 => Ok(ReflectionAction {
                image_x: LinearForm {
                    x: cq(0, 1, -1).scale(&third),
                    y: cq(0, 4, 2).scale(&third),
                },
                image_y: LinearForm {
                    x: cq(0, 2, 1).scale(&third),
                    y: cq(0, -1, -2).scale(&third),
                },
            }),
            _ => Err(DemazureError::BadIndex(i)),
        }
    }

    /// The algebra endomorphism extending the linear substitution.
    pub fn apply(&self, p: &Poly2) -> Poly2 {
        let powers = |l: &LinearForm| {
            let base = l.to_poly();
            let top = p.degree().unwrap_or(0);
            let mut out = vec![Poly2::constant(CycloQ3::one())];
            for k in 0..top as usize {
                out.push(out[k].mul(&base));
            }
            out
        };
        let (sx, sy) = (powers(&self.image_x), powers(&self.image_y));
        let mut out = Poly2::zero();
        for ((a, b), c) in p.terms() {
            for (e, d) in sx[*a as usize].mul(&sy[*b as usize]).terms() {
                out.add_term(*e, c * d);
            }
        }
        out
    }
}

/// The root `ℓ_i`: `y` for `s1`, `x + y` for `s2`.
pub fn root(i: usize) -> Result<LinearForm, DemazureError> {
    match i {
        1 => Ok(LinearForm {
            x: CycloQ3::zero(),
            y: CycloQ3::one(),
        }),
        2 => Ok(LinearForm {
            x: CycloQ3::one(),
            y: CycloQ3::one(),
        }),
        _ => Err(DemazureError::BadIndex(i)),
    }
}

pub fn reflect(i: usize, p: &Poly2) -> Result<Poly2, DemazureError> {
    Ok(ReflectionAction::g4(i)?.apply(p))
}

/// `δ_i(p) = (s_i·p − p) / ℓ_i`.
pub fn delta(i: usize, p: &Poly2) -> Result<Poly2, DemazureError> {
    exact_divide(&reflect(i, p)?.sub(p), &root(i)?)
}

/// Applies `δ_{i_1} ⋯ δ_{i_k}` (rightmost first).
pub fn delta_word(word: &[usize], p: &Poly2) -> Result<Poly2, DemazureError> {
    word.iter()
        .rev()
        .try_fold(p.clone(), |acc, &i| delta(i, &acc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    /// e.g. `3 δ2 y^2`
    pub label: String,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidFailureCertificate {
    /// `δ1 δ2 δ1 (y^4)`
    pub u: String,
    /// `δ2 δ1 δ2 (y^4)`
    pub v: String,
    pub three_u: String,
    pub nine_v: String,
    /// `u_x v_y − u_y v_x`
    pub determinant: String,
    /// The intermediate values displayed alongside the computation.
    pub table: Vec<TableEntry>,
    /// `δ_i^3` kills every monomial up to this degree, for both `i`.
    pub nilpotent_up_to_degree: u32,
}

impl BraidFailureCertificate {
    pub fn table_mismatches(&self) -> impl Iterator<Item = &TableEntry> {
        self.table.iter().filter(|e| !e.matches)
    }
}

fn x_a_y_b(a: u32, b: u32) -> Poly2 {
    Poly2::monomial(CycloQ3::one(), (a, b))
}

fn linear(cx: CycloQ3, cy: CycloQ3) -> Poly2 {
    LinearForm { x: cx, y: cy }.to_poly()
}

/// A displayed value `k · δ_op(p) = target`.
#[derive(Clone, Debug)]
pub struct DisplayedValue {
    pub label: &'static str,
    pub op: usize,
    pub scale: u32,
    pub argument: Poly2,
    pub target: Poly2,
}

/// The seven displayed values of `δ2` and the starting value `δ1 y^4`, as
/// printed. The printed `3 δ2 x^2 = −4x − 4y` differs from the exact value
/// `−4x − 4j y`.
pub fn displayed_values() -> Vec<DisplayedValue> {
    let y3 = Poly2::monomial(cq(0, 1, -1), (2, 0))
        .add(&Poly2::monomial(cq(0, -7, -2), (1, 1)))
        .add(&Poly2::monomial(cq(0, 10, 8), (0, 2)));
    let y4 = Poly2::monomial(cq(0, 0, 1), (3, 0))
        .add(&Poly2::monomial(cq(0, 4, -1), (2, 1)))
        .add(&Poly2::monomial(cq(0, -10, -5), (1, 2)))
        .add(&Poly2::monomial(cq(-10, 0, -1), (0, 3)));
    let v = |label, op, scale, argument, target| DisplayedValue {
        label,
        op,
        scale,
        argument,
        target,
    };
    vec![
        v("3 δ2 y", 2, 3, x_a_y_b(0, 1), Poly2::constant(cq(0, 2, 1))),
        v("3 δ2 x", 2, 3, x_a_y_b(1, 0), Poly2::constant(cq(0, 4, 2))),
        v(
            "3 δ2 y^2",
            2,
            3,
            x_a_y_b(0, 2),
            linear(cq(0, -1, 0), cq(-3, 0, -1)),
        ),
        v(
            "3 δ2 xy",
            2,
            3,
            x_a_y_b(1, 1),
            linear(cq(0, 0, 1), cq(-2, 0, 0)),
        ),
        v(
            "3 δ2 x^2",
            2,
            3,
            x_a_y_b(2, 0),
            linear(cq(-4, 0, 0), cq(-4, 0, 0)),
        ),
        v("9 δ2 y^3", 2, 9, x_a_y_b(0, 3), y3),
        v("9 δ2 y^4", 2, 9, x_a_y_b(0, 4), y4),
        v(
            "δ1 y^4",
            1,
            1,
            x_a_y_b(0, 4),
            x_a_y_b(0, 3).scale(&cq(-1, 1, 0)),
        ),
    ]
}

/// Targets `3u` and `9v`.
pub fn braid_targets() -> (Poly2, Poly2) {
    (
        linear(cq(0, -2, 5), cq(0, 10, 8)),
        linear(cq(0, 4, -13), cq(0, -2, 2)),
    )
}

pub const NILPOTENCY_DEGREE: u32 = 12;

/// `δ_i^3(x^a y^b) = 0` for all `a + b ≤ degree`.
pub fn check_nilpotent(degree: u32) -> Result<(), DemazureError> {
    for i in [1, 2] {
        for d in 0..=degree {
            for a in 0..=d {
                let m = x_a_y_b(a, d - a);
                let cube = delta_word(&[i, i, i], &m)?;
                if !cube.is_zero() {
                    return Err(DemazureError::Mismatch {
                        what: format!("δ{i}^3 (x^{a} y^{})", d - a),
                        computed: cube.to_string(),
                        expected: "0".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Computes `u = δ1δ2δ1(y^4)` and `v = δ2δ1δ2(y^4)`, checks them against
/// the stored targets, and certifies that `u` and `v` are linearly
/// independent, so `δ1δ2δ1` is no scalar multiple of `δ2δ1δ2`. The displayed
/// intermediate values are compared and reported; the conclusion does not
/// depend on them.
pub fn braid_failure_check() -> Result<BraidFailureCertificate, DemazureError> {
    let int = |n: u32| CycloQ3::rational(BigRational::from_integer(n.into()));
    let mut table = Vec::new();
    for d in displayed_values() {
        let computed = delta(d.op, &d.argument)?.scale(&int(d.scale));
        table.push(TableEntry {
            label: d.label.into(),
            computed: computed.to_string(),
            expected: d.target.to_string(),
            matches: computed == d.target,
        });
    }
    let y4 = x_a_y_b(0, 4);
    let u = delta_word(&[1, 2, 1], &y4)?;
    let v = delta_word(&[2, 1, 2], &y4)?;
    let (tu, tv) = braid_targets();
    let three_u = u.scale(&int(3));
    let nine_v = v.scale(&int(9));
    for (what, computed, expected) in [
        ("3 δ1δ2δ1 y^4", &three_u, &tu),
        ("9 δ2δ1δ2 y^4", &nine_v, &tv),
    ] {
        if computed != expected {
            return Err(DemazureError::Mismatch {
                what: what.into(),
                computed: computed.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    let det = &(&u.coeff((1, 0)) * &v.coeff((0, 1))) - &(&u.coeff((0, 1)) * &v.coeff((1, 0)));
    if det.is_zero() {
        return Err(DemazureError::Mismatch {
            what: "determinant of (u, v)".into(),
            computed: "0".into(),
            expected: "nonzero".into(),
        });
    }
    check_nilpotent(NILPOTENCY_DEGREE)?;
    Ok(BraidFailureCertificate {
        u: u.to_string(),
        v: v.to_string(),
        three_u: three_u.to_string(),
        nine_v: nine_v.to_string(),
        determinant: det.to_string(),
        table,
        nilpotent_up_to_degree: NILPOTENCY_DEGREE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_action() {
        assert_eq!(
            reflect(1, &Poly2::y()).unwrap(),
            Poly2::y().scale(&CycloQ3::j())
        );
        assert_eq!(reflect(1, &Poly2::x()).unwrap(), Poly2::x());
        assert!(matches!(
            reflect(3, &Poly2::x()),
            Err(DemazureError::BadIndex(3))
        ));
    }

    #[test]
    fn s2_maps_x() {
        let third = BigRational::new(1.into(), 3.into());
        let expected = linear(cq(0, 1, -1), cq(0, 4, 2)).scale(&CycloQ3::rational(third));
        assert_eq!(reflect(2, &Poly2::x()).unwrap(), expected);
    }

    #[test]
    fn division() {
        let x_plus_y = root(2).unwrap();
        let p = Poly2::x().add(&Poly2::y()).mul(&Poly2::x());
        assert_eq!(exact_divide(&p, &x_plus_y).unwrap(), Poly2::x());
        assert_eq!(
            exact_divide(&x_a_y_b(0, 3), &root(1).unwrap()).unwrap(),
            x_a_y_b(0, 2)
        );
        match exact_divide(&x_a_y_b(2, 0).add(&Poly2::y()), &x_plus_y) {
            Err(DemazureError::NotDivisible { remainder, .. }) => assert_eq!(remainder, "y^2 + y"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn delta1_on_y4() {
        let y4 = x_a_y_b(0, 4);
        let diff = reflect(1, &y4).unwrap().sub(&y4);
        let q = exact_divide(&diff, &root(1).unwrap()).unwrap();
        assert_eq!(q, x_a_y_b(0, 3).scale(&cq(-1, 1, 0)));
    }
}
