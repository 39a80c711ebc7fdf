//! The standard verification battery: a fixed roster of coefficient modules
//! together with a per-module runner that computes every cohomology group,
//! re-derives degree one through the presentation-based oracle, checks the
//! duality pairing and the six-term sequence, and compares dimensions
//! against closed-form expected values where one applies.

use crate::cohomology::{
    duality_report, h0, h0_h2c_duality_check, h1, h1_oracle, h1c, h2c, les_ranks,
};
use crate::expr::{ExprError, ModuleExpr};
use crate::group::GroupKind;
use crate::linalg::QuotientShape;
use crate::module::ModuleError;
use crate::oracle::{eichler_shimura_expected, euler_expected, euler_phi};
use crate::ring::RingSpec;

/// The fixed roster of module expressions every battery run evaluates, in
/// canonical expression syntax.  The list mixes symmetric powers across the
/// weight range, function and coset modules at several levels, and closures
/// under dual, plus-part, sum, and tensor.
pub fn standard_battery() -> Vec<String> {
    let mut list: Vec<String> = Vec::new();
    list.push("Triv".to_string());
    for k in 0..=12 {
        list.push(format!("Sym({k},0)"));
    }
    for (k, j) in [(2, 1), (3, 2), (4, 1), (6, 3)] {
        list.push(format!("Sym({k},{j})"));
    }
    for n in 2..=6 {
        list.push(format!("Fun(SL2,{n})"));
    }
    for n in 2..=4 {
        list.push(format!("Fun(GL2,{n})"));
    }
    list.extend(
        [
            "Coset(SL2,4;[[1,1],[0,1]])",
            "Coset(SL2,5;[[1,1],[0,1]],[[1,0],[1,1]])",
            "Coset(GL2,3;[[1,1],[0,1]],[[2,0],[0,1]])",
            "dual(Sym(4,0))",
            "dual(Fun(SL2,3))",
            "plus(Sym(3,0))",
            "plus(Fun(SL2,4))",
            "sum(Sym(2,0),Sym(4,0))",
            "sum(Triv,Fun(SL2,2))",
            "tensor(Sym(2,0),Sym(2,0))",
            "tensor(Sym(1,0),Sym(1,0))",
            "tensor(Fun(SL2,2),Sym(4,0))",
            "tensor(Fun(SL2,3),Sym(2,0))",
            "tensor(Fun(SL2,4),Sym(1,0))",
            "tensor(Fun(SL2,2),Fun(SL2,3))",
            "dual(tensor(Fun(SL2,2),Sym(2,0)))",
        ]
        .into_iter()
        .map(str::to_string),
    );
    list
}

/// The two coefficient rings every battery cell runs over.
pub fn standard_rings() -> Vec<RingSpec> {
    vec![RingSpec::Q, RingSpec::parse("Z/5^4").expect("valid ring")]
}

/// Closed-form expected dimension for a module over Q, when one of the
/// oracles applies: degree one for symmetric powers (modular-form counts)
/// and level functions (Euler characteristic of the level cover), degree
/// zero for functions on the full matrix group (unit-determinant orbits).
pub fn expected_dimension(expr: &ModuleExpr) -> Option<(&'static str, usize)> {
    match expr {
        ModuleExpr::Sym { k, j: 0 } => Some(("1", eichler_shimura_expected(*k))),
        ModuleExpr::Fun { kind: GroupKind::SL2, n } if *n <= 5 => {
            Some(("1", euler_expected(*n)))
        }
        ModuleExpr::Fun { kind: GroupKind::GL2, n } => {
            Some(("0", euler_phi(*n) as usize))
        }
        _ => None,
    }
}

/// Everything the battery records about one (module, ring) cell.
#[derive(Debug, Clone)]
pub struct CellReport {
    pub module: String,
    pub ring: RingSpec,
    pub h0: QuotientShape,
    pub h1: QuotientShape,
    pub h1c: QuotientShape,
    pub h2c: QuotientShape,
    pub presentation_ok: bool,
    pub oracle_agrees: bool,
    pub duality_ok: bool,
    pub les_ok: bool,
    pub expected: Option<(&'static str, usize)>,
    pub expected_match: Option<bool>,
}

impl CellReport {
    /// Every internal cross-check in this cell succeeded.
    pub fn all_ok(&self) -> bool {
        self.presentation_ok
            && self.oracle_agrees
            && self.duality_ok
            && self.les_ok
            && self.expected_match.unwrap_or(true)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BatteryError {
    #[error(transparent)]
    Parse(#[from] ExprError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Evaluate one module expression over one ring and run the full set of
/// checks on it.
pub fn run_cell(ring: RingSpec, expr_text: &str) -> Result<CellReport, BatteryError> {
    let expr = ModuleExpr::parse(expr_text)?;
    let module = expr.eval(ring)?;

    let r0 = h0(&module);
    let r1 = h1(&module);
    let r1c = h1c(&module);
    let r2c = h2c(&module);
    let oracle_agrees = h1_oracle(&module).shape == r1.shape;
    let dual_rep = duality_report(&module);
    let duality_ok =
        dual_rep.shapes_agree && dual_rep.pairing_perfect && h0_h2c_duality_check(&module);
    let les_ok = les_ranks(&module).exact;

    let expected = if ring == RingSpec::Q {
        expected_dimension(&expr)
    } else {
        None
    };
    let expected_match = expected.map(|(degree, dim)| {
        let shape = match degree {
            "0" => &r0.shape,
            _ => &r1.shape,
        };
        *shape == QuotientShape::Dim(dim)
    });

    Ok(CellReport {
        module: expr.canonical(),
        ring,
        h0: r0.shape,
        h1: r1.shape,
        h1c: r1c.shape,
        h2c: r2c.shape,
        presentation_ok: module.verify_presentation(),
        oracle_agrees,
        duality_ok,
        les_ok,
        expected,
        expected_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Instant;

    #[test]
    fn roster_is_large_enough_and_parses() {
        let roster = standard_battery();
        assert!(roster.len() >= 40, "battery holds {} modules", roster.len());
        for text in &roster {
            let expr = ModuleExpr::parse(text).expect(text);
            assert_eq!(expr.canonical(), *text, "roster entries are canonical");
        }
    }

    #[test]
    fn single_cell_runs_clean_over_both_rings() {
        for ring in standard_rings() {
            let cell = run_cell(ring, "Sym(2,0)").unwrap();
            assert!(cell.all_ok(), "{cell:?}");
            assert_eq!(cell.h1.gens(), 1);
        }
    }

    #[test]
    fn expected_dimensions_are_attached_to_the_right_cells() {
        let sym = ModuleExpr::parse("Sym(10,0)").unwrap();
        assert_eq!(expected_dimension(&sym), Some(("1", 3)));
        let fun = ModuleExpr::parse("Fun(SL2,4)").unwrap();
        assert_eq!(expected_dimension(&fun), Some(("1", 5)));
        let gl = ModuleExpr::parse("Fun(GL2,6)").unwrap();
        assert_eq!(expected_dimension(&gl), Some(("0", 2)));
        let twisted = ModuleExpr::parse("Sym(4,1)").unwrap();
        assert_eq!(expected_dimension(&twisted), None);
    }

    #[test]
    fn heavier_cells_stay_inside_the_time_budget() {
        for (ring, text) in [
            (RingSpec::Q, "Fun(SL2,5)"),
            (RingSpec::parse("Z/5^4").unwrap(), "Fun(SL2,5)"),
            (RingSpec::Q, "tensor(Fun(SL2,3),Sym(2,0))"),
            (RingSpec::Q, "Fun(GL2,4)"),
            (RingSpec::Q, "Fun(SL2,6)"),
        ] {
            let start = Instant::now();
            let cell = run_cell(ring, text).unwrap();
            let ms = start.elapsed().as_millis();
            println!("cell {text} over {} took {ms} ms", ring.label());
            assert!(cell.all_ok(), "{cell:?}");
        }
    }
}
