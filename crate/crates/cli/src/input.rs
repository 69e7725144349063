use std::fs;
use std::path::Path;

use colour_loop::abelian::{AbelianGroup, GroupElement, Subgroup};
use colour_loop::colouralg::{AlgebraWire, ColourAlgebra};
use colour_loop::gmodule::{GradedModule, ModuleWire};
use colour_loop::grading::{BiCharacterWire, Multiplier};
use colour_loop::workbench::sigma_sl2;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::Failure;

pub enum Loaded {
    Algebra(ColourAlgebra),
    Module(GradedModule),
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn wire<T: DeserializeOwned>(path: &Path, v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A module file has an `algebra` field; anything else is read as an algebra.
pub fn load_any(path: &Path) -> Result<Loaded, Failure> {
    let v = read_json(path)?;
    if v.get("algebra").is_some() {
        let w: ModuleWire = wire(path, v)?;
        Ok(Loaded::Module(GradedModule::from_wire(w)?))
    } else {
        let w: AlgebraWire = wire(path, v)?;
        Ok(Loaded::Algebra(ColourAlgebra::try_from(w)?))
    }
}

pub fn load_algebra(path: &Path) -> Result<ColourAlgebra, Failure> {
    match load_any(path)? {
        Loaded::Algebra(a) => Ok(a),
        Loaded::Module(_) => Err(Failure::Input(format!("{}: expected an algebra, found a module", path.display()))),
    }
}

pub fn load_module(path: &Path) -> Result<GradedModule, Failure> {
    match load_any(path)? {
        Loaded::Module(m) => Ok(m),
        Loaded::Algebra(_) => Err(Failure::Input(format!("{}: expected a module, found an algebra", path.display()))),
    }
}

/// `paper-sl2` (or `sl2`) names the built-in `(-1)^{a2 b1}`; anything else is a file.
pub fn load_sigma(arg: &str) -> Result<Multiplier, Failure> {
    if arg == "paper-sl2" || arg == "sl2" {
        return Ok(sigma_sl2());
    }
    let path = Path::new(arg);
    let w: BiCharacterWire = wire(path, read_json(path)?)?;
    let g = AbelianGroup::new(w.group.orders().to_vec())?;
    Ok(Multiplier::new(&g, w.m, &w.exponents)?)
}

/// Parses `01` (one digit per factor) or `0:1`.
pub fn parse_element(g: &AbelianGroup, s: &str) -> Result<GroupElement, Failure> {
    let s = s.trim();
    let parts: Vec<&str> = if s.contains(':') {
        s.split(':').collect()
    } else if s.len() == g.rank() && s.chars().all(|c| c.is_ascii_digit()) {
        (0..s.len()).map(|i| &s[i..i + 1]).collect()
    } else {
        return Err(Failure::Input(format!(
            "cannot read {s:?} as an element of a rank-{} group; use one digit per factor or `a:b`",
            g.rank()
        )));
    };
    let residues = parts
        .iter()
        .map(|p| p.trim().parse::<i64>().map_err(|_| Failure::Input(format!("bad residue {p:?} in {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(g.element(&residues)?)
}

/// Subgroup generated by a comma-separated list; empty or `0` gives the trivial subgroup.
pub fn parse_subgroup(g: &AbelianGroup, s: &str) -> Result<Subgroup, Failure> {
    let gens = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_element(g, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(g, gens)?)
}

pub fn parse_orders(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Failure::Input(format!("bad group order {t:?}"))))
        .collect()
}
