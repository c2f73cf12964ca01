use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::graded::{Coefficients, Generator, GradedClass};
use super::parse::Atom;

/// Characteristic data of a ring-modelled manifold: a truncated ring with
/// its total Stiefel–Whitney class and, when the integral cohomology is
/// torsion-free, its total Pontrjagin class.
#[derive(Debug, Clone, PartialEq)]
pub struct RingModel {
    pub generators: Vec<Generator>,
    pub sw: GradedClass,
    pub pontrjagin: Option<GradedClass>,
}

/// Characteristic numbers quoted directly. Monomials absent from a table are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberTable {
    pub sw: BTreeMap<Vec<u32>, u8>,
    pub pontrjagin: BTreeMap<Vec<u32>, BigInt>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CohomologyModel {
    Ring(RingModel),
    Table(NumberTable),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassData {
    pub dimension: u32,
    pub orientable: bool,
    pub euler_characteristic: BigInt,
    pub stably_parallelizable: bool,
    pub model: CohomologyModel,
}

fn ring(
    dimension: u32,
    generators: Vec<Generator>,
    sw: impl FnOnce(&GradedClass) -> GradedClass,
    pontrjagin: Option<&dyn Fn(&GradedClass) -> GradedClass>,
) -> CohomologyModel {
    let one2 = GradedClass::one(Coefficients::Mod2, generators.clone(), dimension);
    let one_z = GradedClass::one(Coefficients::Integer, generators.clone(), dimension);
    CohomologyModel::Ring(RingModel {
        sw: sw(&one2),
        pontrjagin: pontrjagin.map(|p| p(&one_z)),
        generators,
    })
}

fn trivial(one: &GradedClass) -> GradedClass {
    one.clone()
}

/// `(1 + a^2)^k` for the single generator `a`.
fn one_plus_square_pow(one: &GradedClass, k: u32) -> GradedClass {
    let mut c = one.clone();
    c.add_term(vec![2], BigInt::one());
    c.pow(k)
}

pub fn class_data(atom: Atom) -> ClassData {
    let dimension = atom.dimension();
    let (orientable, chi, stably_parallelizable, model): (bool, BigInt, bool, CohomologyModel) =
        match atom {
            Atom::Point => (
                true,
                1.into(),
                false,
                ring(0, vec![], trivial, Some(&trivial)),
            ),
            Atom::Sphere(n) => (
                true,
                (if n % 2 == 0 { 2 } else { 0 }).into(),
                true,
                ring(n, vec![Generator::new("x", n, 2)], trivial, Some(&trivial)),
            ),
            Atom::Torus(n) => (
                true,
                0.into(),
                true,
                ring(
                    n,
                    (1..=n)
                        .map(|i| Generator::new(format!("t{i}"), 1, 2))
                        .collect(),
                    trivial,
                    Some(&trivial),
                ),
            ),
            Atom::SpecialUnitary(n) => (
                true,
                0.into(),
                true,
                ring(
                    dimension,
                    (2..=n)
                        .map(|k| Generator::new(format!("x{}", 2 * k - 1), 2 * k - 1, 2))
                        .collect(),
                    trivial,
                    Some(&trivial),
                ),
            ),
            Atom::RealProjective(n) => (
                n % 2 == 1,
                (if n % 2 == 0 { 1 } else { 0 }).into(),
                matches!(n, 1 | 3 | 7),
                ring(
                    n,
                    vec![Generator::new("a", 1, n + 1)],
                    |one| one.one_plus_generator(0, 1).pow(n + 1),
                    None,
                ),
            ),
            Atom::ComplexProjective(n) => (
                true,
                (n + 1).into(),
                false,
                ring(
                    2 * n,
                    vec![Generator::new("a", 2, n + 1)],
                    |one| one.one_plus_generator(0, 1).pow(n + 1),
                    Some(&|one| one_plus_square_pow(one, n + 1)),
                ),
            ),
            Atom::Wu => (
                true,
                0.into(),
                false,
                CohomologyModel::Table(NumberTable {
                    sw: BTreeMap::from([(vec![2, 3], 1)]),
                    pontrjagin: BTreeMap::new(),
                }),
            ),
            Atom::SigmaD(d) => {
                let d = BigInt::from(d);
                let chi = &d * &d * &d - 4 * &d * &d + 6 * &d;
                let p1 = (4 - &d * &d) * &d;
                let mut sw = BTreeMap::new();
                if is_odd(&chi) {
                    sw.insert(vec![4], 1);
                }
                if is_odd(&p1) {
                    sw.insert(vec![2, 2], 1);
                }
                (
                    true,
                    chi,
                    d == BigInt::from(2),
                    CohomologyModel::Table(NumberTable {
                        sw,
                        pontrjagin: BTreeMap::from([(vec![1], p1)]),
                    }),
                )
            }
        };
    ClassData {
        dimension,
        orientable,
        euler_characteristic: chi,
        stably_parallelizable,
        model,
    }
}

fn is_odd(v: &BigInt) -> bool {
    v % 2 != BigInt::from(0)
}

/// Tensor product of the ring models of `atoms`, or `None` if some atom
/// only carries a number table.
pub fn product_ring(atoms: &[Atom]) -> Option<RingModel> {
    let tag = atoms.len() > 1;
    let mut acc: Option<RingModel> = None;
    for (k, atom) in atoms.iter().enumerate() {
        let CohomologyModel::Ring(r) = class_data(*atom).model else {
            return None;
        };
        let r = if tag { rename(r, k + 1) } else { r };
        acc = Some(match acc {
            None => r,
            Some(a) => RingModel {
                generators: a.generators.iter().chain(&r.generators).cloned().collect(),
                sw: a.sw.tensor(&r.sw),
                pontrjagin: match (a.pontrjagin, r.pontrjagin) {
                    (Some(x), Some(y)) => Some(x.tensor(&y)),
                    _ => None,
                },
            },
        });
    }
    Some(acc.unwrap_or_else(|| match class_data(Atom::Point).model {
        CohomologyModel::Ring(r) => r,
        CohomologyModel::Table(_) => unreachable!("the point carries a ring model"),
    }))
}

fn rename(r: RingModel, k: usize) -> RingModel {
    let f = move |name: &str| format!("{name}_{k}");
    RingModel {
        generators: r
            .generators
            .into_iter()
            .map(|g| Generator {
                name: f(&g.name),
                ..g
            })
            .collect(),
        sw: r.sw.with_generator_names(f),
        pontrjagin: r.pontrjagin.map(|p| p.with_generator_names(f)),
    }
}
