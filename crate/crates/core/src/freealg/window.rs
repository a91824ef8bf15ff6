use crate::coeff::Coefficient;

use super::{AlgebraElement, Gen, Word};

/// Order relation `g^n = a_{n−1} g^{n−1} + … + a_1 g + a_0` for one
/// generator, with the inverse of the unit `a_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderRule<K: Coefficient> {
    /// `a_0, …, a_{n−1}`.
    pub coeffs: Vec<K>,
    pub inv_constant: K,
}

impl<K: Coefficient> OrderRule<K> {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The exponent window `[lo, hi]`, of width `n`, containing 0: `{−1,0,1}`
    /// for cubic relations and `{0,1}` for quadratic ones.
    pub fn window(&self) -> (i32, i32) {
        let n = self.order() as i32;
        let lo = -((n - 1) / 2);
        (lo, lo + n - 1)
    }
}

/// Per-generator rewriting of out-of-window powers; generators without a rule
/// are left untouched.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowPolicy<K: Coefficient> {
    rules: Vec<Option<OrderRule<K>>>,
}

impl<K: Coefficient> WindowPolicy<K> {
    pub fn new(rules: Vec<Option<OrderRule<K>>>) -> Self {
        WindowPolicy { rules }
    }

    pub fn rule(&self, gen: Gen) -> Option<&OrderRule<K>> {
        self.rules.get(gen as usize).and_then(Option::as_ref)
    }

    pub fn num_generators(&self) -> usize {
        self.rules.len()
    }

    pub fn in_window(&self, gen: Gen, exp: i32) -> bool {
        match self.rule(gen) {
            Some(r) => {
                let (lo, hi) = r.window();
                (lo..=hi).contains(&exp)
            }
            None => true,
        }
    }

    pub fn is_reduced(&self, word: &Word) -> bool {
        word.letters().iter().all(|l| self.in_window(l.gen, l.exp))
    }

    /// Rewrites `g^k` with `k` outside the window as a combination of
    /// `g^e`, each `e` strictly closer to the window.
    fn expand(&self, gen: Gen, exp: i32) -> Vec<(i32, K)> {
        let rule = self
            .rule(gen)
            .expect("expand called on unconstrained generator");
        let n = rule.order() as i32;
        let (lo, hi) = rule.window();
        if exp > hi {
            // g^k = Σ a_i g^{k−n+i}
            rule.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| (exp - n + i as i32, a.clone()))
                .collect()
        } else {
            debug_assert!(exp < lo);
            // g^k = a_0⁻¹ (g^{k+n} − Σ_{i≥1} a_i g^{k+i})
            let inv = &rule.inv_constant;
            let mut out = vec![(exp + n, inv.clone())];
            for (i, a) in rule.coeffs.iter().enumerate().skip(1) {
                out.push((exp + i as i32, a.mul(inv).neg()));
            }
            out
        }
    }

    /// Rewrites every out-of-window power, leftmost letter first, until all
    /// exponents lie in their windows.
    pub fn reduce(&self, x: &AlgebraElement<K>) -> AlgebraElement<K> {
        let ctx = x.context();
        let mut out = AlgebraElement::zero(ctx);
        let mut stack: Vec<(Word, K)> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((word, coeff)) = stack.pop() {
            let bad = word
                .letters()
                .iter()
                .position(|l| !self.in_window(l.gen, l.exp));
            let Some(pos) = bad else {
                out.add_term(word, coeff);
                continue;
            };
            let letters = word.letters();
            let gen = letters[pos].gen;
            for (e, a) in self.expand(gen, letters[pos].exp) {
                if a.is_zero() {
                    continue;
                }
                let mut w = Word::from_letters(letters[..pos].iter().map(|l| (l.gen, l.exp)));
                w.push(gen, e);
                for l in &letters[pos + 1..] {
                    w.push(l.gen, l.exp);
                }
                stack.push((w, coeff.mul(&a)));
            }
        }
        out
    }

    pub fn reduce_word(&self, ctx: &K::Context, word: Word) -> AlgebraElement<K> {
        if self.is_reduced(&word) {
            return AlgebraElement::from_word(ctx, word);
        }
        self.reduce(&AlgebraElement::from_word(ctx, word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{LaurentPoly, RingSpec};
    use crate::freealg::Alphabet;
    use std::sync::Arc;

    fn setup() -> (Arc<RingSpec>, Alphabet, WindowPolicy<LaurentPoly>) {
        let ring = RingSpec::new(&["a", "b", "c", "d", "e"], &["c", "e"]).unwrap();
        let p = |s: &str| LaurentPoly::parse(&ring, s).unwrap();
        let cubic = OrderRule {
            coeffs: vec![p("c"), p("b"), p("a")],
            inv_constant: p("c^-1"),
        };
        let quad = OrderRule {
            coeffs: vec![p("e"), p("d")],
            inv_constant: p("e^-1"),
        };
        let policy = WindowPolicy::new(vec![Some(cubic.clone()), Some(cubic), Some(quad)]);
        (
            ring.clone(),
            Alphabet::new(&["s1", "s2", "t"]).unwrap(),
            policy,
        )
    }

    fn elem(ring: &Arc<RingSpec>, alpha: &Alphabet, s: &str) -> AlgebraElement<LaurentPoly> {
        AlgebraElement::parse(ring, alpha, s).unwrap()
    }

    #[test]
    fn windows() {
        let (_, _, policy) = setup();
        assert_eq!(policy.rule(0).unwrap().window(), (-1, 1));
        assert_eq!(policy.rule(2).unwrap().window(), (0, 1));
    }

    #[test]
    fn order_relation_rewrites() {
        let (r, a, policy) = setup();
        let red = |s: &str| policy.reduce(&elem(&r, &a, s));
        assert_eq!(red("s1^2"), elem(&r, &a, "[b] 1 + [c] s1^-1 + [a] s1"));
        assert_eq!(
            red("s1^-2"),
            elem(&r, &a, "[-a*c^-1] 1 + [-b*c^-1] s1^-1 + [c^-1] s1")
        );
        assert_eq!(red("t^-1"), elem(&r, &a, "[-d*e^-1] 1 + [e^-1] t"));
        assert_eq!(red("t t"), elem(&r, &a, "[e] 1 + [d] t"));
    }

    #[test]
    fn t_cubed_matches_repeated_substitution() {
        let (r, a, policy) = setup();
        // oracle: t³ = t·t² = t(dt + e) = d t² + e t = d(dt + e) + e t
        let p = |s: &str| LaurentPoly::parse(&r, s).unwrap();
        let t = elem(&r, &a, "t");
        let t2 = elem(&r, &a, "[d] t + [e] 1");
        let expected = t2.scale(&p("d")).add(&t.scale(&p("e")));
        let expected = policy.reduce(&expected);
        assert_eq!(policy.reduce(&elem(&r, &a, "t^3")), expected);
        assert_eq!(expected, elem(&r, &a, "[d*e] 1 + [d^2 + e] t"));
    }

    #[test]
    fn merging_after_rewrite_is_reduced() {
        let (r, a, policy) = setup();
        let x = policy.reduce(&elem(&r, &a, "s1 s2^2 s1 t^3 s2^-4"));
        assert!(x.terms().all(|(w, _)| policy.is_reduced(w)));
        assert_eq!(policy.reduce(&x), x);
    }
}
