use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{DEFAULT_AMPLITUDE, DEFAULT_MAJOR, DEFAULT_MINOR, DEFAULT_N, DEFAULT_RADIUS, DEFAULT_SEED};

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub flag: &'static str,
    #[serde(rename = "type")]
    pub ty: &'static str,
    pub default: String,
    pub constraint: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub surfaces: Vec<CatalogEntry>,
    pub fields: Vec<CatalogEntry>,
    pub suites: Vec<&'static str>,
}

fn param(flag: &'static str, ty: &'static str, default: impl ToString, constraint: &'static str) -> ParamSpec {
    ParamSpec { flag, ty, default: default.to_string(), constraint }
}

pub fn catalog() -> Catalog {
    let surfaces = vec![
        CatalogEntry {
            name: "sphere",
            summary: "round sphere S^{2n+1}(r); n = 1 and n = 2 have tuned default grids",
            params: vec![
                param("--n", "integer", DEFAULT_N, ">= 1"),
                param("--radius", "float", DEFAULT_RADIUS, "> 0"),
            ],
        },
        CatalogEntry {
            name: "ellipsoid",
            summary: "axis-aligned ellipsoid centred at the origin, degree 1",
            params: vec![
                param("--semi-axes", "float list", "1,1.2,1.4,1.7", "2n+2 positive values"),
                param("--n", "integer", "from --semi-axes", "must match the semi-axis count"),
            ],
        },
        CatalogEntry {
            name: "tube-torus",
            summary: "S^1(R) x S^2(rho) in R^4, degree 0",
            params: vec![
                param("--R", "float", DEFAULT_MAJOR, "> rho"),
                param("--rho", "float", DEFAULT_MINOR, "> 0"),
            ],
        },
    ];
    let fields = vec![
        CatalogEntry { name: "hopf", summary: "Hopf field Jx/|x|; round spheres only", params: vec![] },
        CatalogEntry { name: "circle", summary: "unit tangent along the core circle; tube torus only", params: vec![] },
        CatalogEntry {
            name: "projected-hopf",
            summary: "tangential projection of Jx, normalized; spheres and ellipsoids",
            params: vec![],
        },
        CatalogEntry {
            name: "perturbed",
            summary: "natural field tilted towards a seeded constant direction",
            params: vec![
                param("--amplitude", "float", DEFAULT_AMPLITUDE, "in [0, 1)"),
                param("--seed", "integer", DEFAULT_SEED, ">= 0"),
            ],
        },
        CatalogEntry {
            name: "natural",
            summary: "hopf on spheres, circle on the torus, projected-hopf otherwise",
            params: vec![],
        },
    ];
    Catalog {
        schema_version: unitfield_core::verify::REPORT_SCHEMA_VERSION,
        surfaces,
        fields,
        suites: unitfield_core::verify::Suite::NAMES.to_vec(),
    }
}

fn render_entries(out: &mut String, title: &str, entries: &[CatalogEntry]) {
    let _ = writeln!(out, "{title}:");
    for e in entries {
        let _ = writeln!(out, "  {:<16}{}", e.name, e.summary);
        for p in &e.params {
            let _ = writeln!(out, "  {:<16}  {:<12} {:<11} default {:<16} {}", "", p.flag, p.ty, p.default, p.constraint);
        }
    }
}

pub fn render_text(c: &Catalog) -> String {
    let mut out = String::new();
    render_entries(&mut out, "surfaces", &c.surfaces);
    render_entries(&mut out, "fields", &c.fields);
    let _ = writeln!(out, "suites: {}", c.suites.join(", "));
    out
}
