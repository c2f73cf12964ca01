use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integer,
    Mod2,
}

/// A cohomology generator with `g^nilpotency = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub nilpotency: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, nilpotency: u32) -> Self {
        Self {
            name: name.into(),
            degree,
            nilpotency,
        }
    }
}

/// Element of a truncated commutative polynomial ring
/// `R[g_1, ..., g_k] / (g_i^{e_i})`, cut off above `truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    coefficients: Coefficients,
    generators: Vec<Generator>,
    truncation: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl GradedClass {
    pub fn zero(coefficients: Coefficients, generators: Vec<Generator>, truncation: u32) -> Self {
        Self {
            coefficients,
            generators,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(coefficients: Coefficients, generators: Vec<Generator>, truncation: u32) -> Self {
        let mut c = Self::zero(coefficients, generators, truncation);
        let k = c.generators.len();
        c.add_term(vec![0; k], BigInt::one());
        c
    }

    /// The class `1 + coeff * g_i`.
    pub fn one_plus_generator(&self, i: usize, coeff: i64) -> Self {
        let mut c = Self::one(self.coefficients, self.generators.clone(), self.truncation);
        let mut e = vec![0; self.generators.len()];
        e[i] = 1;
        c.add_term(e, BigInt::from(coeff));
        c
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn degree_of(&self, exponents: &[u32]) -> u32 {
        exponents
            .iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    fn survives(&self, exponents: &[u32]) -> bool {
        exponents
            .iter()
            .zip(&self.generators)
            .all(|(e, g)| *e < g.nilpotency)
            && self.degree_of(exponents) <= self.truncation
    }

    /// Adds `value` times the monomial; monomials killed by the relations are dropped.
    pub fn add_term(&mut self, exponents: Vec<u32>, value: BigInt) {
        if !self.survives(&exponents) {
            return;
        }
        let mut total = self.terms.remove(&exponents).unwrap_or_default() + value;
        if self.coefficients == Coefficients::Mod2 {
            total = total.mod_floor(&BigInt::from(2));
        }
        if !total.is_zero() {
            self.terms.insert(exponents, total);
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        let unit = vec![0; self.generators.len()];
        self.terms.len() == 1 && self.terms.get(&unit).is_some_and(One::is_one)
    }

    /// Degree-`d` homogeneous part.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut c = Self::zero(self.coefficients, self.generators.clone(), self.truncation);
        c.terms = self
            .terms
            .iter()
            .filter(|(e, _)| self.degree_of(e) == d)
            .map(|(e, v)| (e.clone(), v.clone()))
            .collect();
        c
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.generators, rhs.generators,
            "product of classes in different rings"
        );
        let mut out = Self::zero(self.coefficients, self.generators.clone(), self.truncation);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.coefficients, self.generators.clone(), self.truncation);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.coefficients, self.generators.clone(), self.truncation);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * k);
        }
        out
    }

    pub fn reduce_mod2(&self) -> Self {
        let mut out = Self::zero(Coefficients::Mod2, self.generators.clone(), self.truncation);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    /// Cross product into the tensor ring; generators of `rhs` follow those of `self`.
    pub fn tensor(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.coefficients, rhs.coefficients,
            "tensor of classes over different rings"
        );
        let mut gens = self.generators.clone();
        gens.extend(rhs.generators.iter().cloned());
        let mut out = Self::zero(self.coefficients, gens, self.truncation + rhs.truncation);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let mut e = ea.clone();
                e.extend_from_slice(eb);
                out.add_term(e, va * vb);
            }
        }
        out
    }

    pub fn with_generator_names(mut self, rename: impl Fn(&str) -> String) -> Self {
        for g in &mut self.generators {
            g.name = rename(&g.name);
        }
        self
    }

    /// Exponents of the product of all generators raised to their top power.
    pub fn top_monomial(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.nilpotency - 1).collect()
    }

    /// Pairing with the fundamental class: the coefficient of the top monomial.
    pub fn evaluate(&self) -> BigInt {
        self.coefficient(&self.top_monomial())
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (self.degree_of(e), std::cmp::Reverse((*e).clone())));
        let mut first = true;
        for (e, v) in ordered {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.generators)
                .filter(|(p, _)| **p > 0)
                .map(|(p, g)| {
                    if *p == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{}", g.name, p)
                    }
                })
                .collect();
            let negative = v < &BigInt::zero();
            let mag = if negative { -v.clone() } else { v.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join(""))?,
                (false, false) => write!(f, "{mag}{}", mono.join(""))?,
            }
        }
        Ok(())
    }
}
