use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};

use crate::composition::{composition_factors, FactorLabel, FactorMultiset};
use crate::error::{Error, Result};
use crate::group::{Realizer, DEFAULT_MAX_ORDER};
use crate::interface::GroupSpec;
use crate::normal::{DResult, NormalLattice};
use crate::numbers::{divisor_sum, format_ratio};
use crate::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub max_order: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

fn as_json_number<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&n.to_string())
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

/// Everything `analyze` knows about a group. Symbolic reports (groups too
/// large to realize) carry only the order, D and perfection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub spec: String,
    pub symbolic: bool,
    #[serde(serialize_with = "as_json_number")]
    pub order: BigUint,
    #[serde(serialize_with = "as_json_number")]
    pub d_value: BigUint,
    pub ratio: String,
    pub is_perfect: bool,
    pub is_tight: Option<bool>,
    pub normal_subgroup_orders: Option<Vec<usize>>,
    pub composition_factors: Option<BTreeMap<String, usize>>,
    pub abelianization_factors: Option<Vec<u64>>,
    pub normal_generator_count: Option<usize>,
}

/// Shape used to read reports back.
#[derive(Debug, Clone, Deserialize)]
pub struct ParsedReport {
    pub schema: u32,
    pub spec: String,
    pub symbolic: bool,
    pub order: serde_json::Number,
    pub d_value: serde_json::Number,
    pub ratio: String,
    pub is_perfect: bool,
    pub is_tight: Option<bool>,
    pub normal_subgroup_orders: Option<Vec<usize>>,
    pub composition_factors: Option<BTreeMap<String, usize>>,
    pub abelianization_factors: Option<Vec<u64>>,
    pub normal_generator_count: Option<usize>,
}

impl AnalysisReport {
    /// Checks the report against itself: D equals the sum of normal
    /// subgroup orders, and the ratio is D/order in lowest terms.
    pub fn is_consistent(&self) -> bool {
        let ratio = Rational::new(self.d_value.clone(), self.order.clone());
        let sum_ok = match &self.normal_subgroup_orders {
            Some(orders) => {
                orders.iter().map(|&o| BigUint::from(o)).sum::<BigUint>() == self.d_value
            }
            None => self.symbolic,
        };
        sum_ok
            && self.ratio == format_ratio(&ratio)
            && self.is_perfect == (self.d_value == &self.order * 2u32)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "group: {}", self.spec)?;
        if self.symbolic {
            writeln!(
                out,
                "symbolic: yes (coprime direct product, D evaluated multiplicatively)"
            )?;
        }
        writeln!(out, "order: {}", self.order)?;
        writeln!(out, "d_value: {}", self.d_value)?;
        writeln!(out, "ratio: {}", self.ratio)?;
        writeln!(out, "is_perfect: {}", yes_no(self.is_perfect))?;
        if let Some(t) = self.is_tight {
            writeln!(out, "is_tight: {}", yes_no(t))?;
        }
        if let Some(orders) = &self.normal_subgroup_orders {
            writeln!(out, "normal_subgroup_orders: [{}]", join(orders))?;
        }
        if let Some(c) = &self.composition_factors {
            let parts: Vec<String> = c.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            writeln!(out, "composition_factors: {{{}}}", parts.join(", "))?;
        }
        if let Some(a) = &self.abelianization_factors {
            writeln!(out, "abelianization_factors: [{}]", join(a))?;
        }
        if let Some(n) = self.normal_generator_count {
            writeln!(out, "normal_generator_count: {n}")?;
        }
        f.write_str(out.trim_end())
    }
}

fn factor_map(m: &FactorMultiset) -> BTreeMap<String, usize> {
    m.counts()
        .iter()
        .map(|(k, &v)| (k.to_string(), v))
        .collect()
}

/// Analyzes a group description, realizing it when it fits the bound and
/// otherwise falling back to the multiplicative evaluation of D over a
/// coprime product of one nonabelian simple atom and cyclic atoms.
pub fn analyze(spec: &GroupSpec, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let realizer = Realizer::new(options.max_order);
    let order = spec.order();
    if realizer.check_order("", &order).is_err() {
        return analyze_symbolic(spec, options);
    }
    let group = spec.realize(&realizer)?;
    let lattice = NormalLattice::compute(&group);
    let d: DResult<BigUint> = lattice.d_result();
    let (_, abelian) = group.abelianization();
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        spec: spec.to_string(),
        symbolic: false,
        order: d.order,
        d_value: d.d_value,
        ratio: format_ratio(&d.ratio),
        is_perfect: d.is_perfect,
        is_tight: Some(lattice.is_tight()),
        normal_subgroup_orders: Some(lattice.orders()),
        composition_factors: Some(factor_map(&composition_factors(&group))),
        abelianization_factors: Some(abelian.invariant_factors().to_vec()),
        normal_generator_count: Some(lattice.normal_generators().len()),
    })
}

fn analyze_symbolic(spec: &GroupSpec, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let too_big = || Error::OrderBound {
        what: spec.to_string(),
        needed: spec.order().to_string(),
        bound: options.max_order,
    };
    let atoms = spec.atoms();
    let simple: Vec<&GroupSpec> = atoms
        .iter()
        .copied()
        .filter(|a| a.is_nonabelian_simple_atom())
        .collect();
    if simple.len() > 1 {
        return Err(too_big());
    }
    let mut factors = FactorMultiset::new();
    let mut d_value = BigUint::one();
    for atom in &atoms {
        let (atom_factors, atom_d) = match **atom {
            GroupSpec::Cyclic(n) => (FactorMultiset::cyclic(n)?, divisor_sum(&BigUint::from(n))?),
            ref a if a.is_nonabelian_simple_atom() => {
                let order = a.order();
                let size = u64::try_from(&order).map_err(|_| Error::TooLarge(order.to_string()))?;
                (
                    FactorMultiset::singleton(FactorLabel::NonabelianSimple(size)),
                    order + 1u32,
                )
            }
            _ => return Err(too_big()),
        };
        if !factors.is_disjoint(&atom_factors) {
            return Err(Error::domain(format!(
                "{}: D is only multiplicative over coprime factors (no composition factor in common), \
                 and {atom} shares a composition factor with the rest",
                spec
            )));
        }
        factors = factors + atom_factors;
        d_value *= atom_d;
    }
    let order = spec.order();
    let ratio = Rational::new(d_value.clone(), order.clone());
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        spec: spec.to_string(),
        symbolic: true,
        is_perfect: d_value == &order * 2u32,
        order,
        d_value,
        ratio: format_ratio(&ratio),
        is_tight: None,
        normal_subgroup_orders: None,
        composition_factors: None,
        abelianization_factors: None,
        normal_generator_count: None,
    })
}
