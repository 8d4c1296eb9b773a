//! Report rendering: human-readable tables by default, machine-readable JSON
//! with `--format json`. JSON objects use alphabetically ordered keys and
//! exact integers, so identical inputs produce byte-identical output.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};
use toric_mcm::chambers::ChamberReport;
use toric_mcm::cone::{Cone, FaceLattice};
use toric_mcm::engine::{CohomologyReport, McmCertificate, McmDisjunct, SingularitySets};
use toric_mcm::simplicial::{CohomologyDims, SimplicialComplex};
use toric_mcm::toric::{Divisor, SupportSet};
use toric_mcm::RaySet;

pub fn bigint_value(x: &BigInt) -> Value {
    // arbitrary-precision numbers survive the round trip as JSON numbers
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn int_vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_value).collect())
}

pub fn rayset_value(s: &RaySet) -> Value {
    Value::Array(
        s.one_based()
            .into_iter()
            .map(|i| Value::Number(Number::from(i)))
            .collect(),
    )
}

fn dims_value(d: &CohomologyDims) -> Value {
    json!({
        "min_degree": d.min_degree,
        "dims": d.dims,
    })
}

fn fmt_vec(v: &[BigInt]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn fmt_dims(d: &CohomologyDims) -> String {
    let nz = d.nonzero();
    if nz.is_empty() {
        "-".to_string()
    } else {
        nz.iter()
            .map(|(deg, dim)| format!("H~^{deg}={dim}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn faces_json(cone: &Cone, fl: &FaceLattice) -> Value {
    json!({
        "rank": cone.rank(),
        "rays": cone.rays().iter().map(|r| int_vector(r)).collect::<Vec<_>>(),
        "faces": fl.faces().iter().map(|f| json!({
            "rays": rayset_value(&f.rays),
            "dim": f.dim,
        })).collect::<Vec<_>>(),
        "facets": fl.facets().iter().map(|f| json!({
            "rays": rayset_value(&f.rays),
            "normal": int_vector(&f.normal),
        })).collect::<Vec<_>>(),
    })
}

pub fn faces_table(cone: &Cone, fl: &FaceLattice) -> String {
    let mut out = format!("rank {}, {} rays\n", cone.rank(), cone.n_rays());
    for d in 0..=cone.rank() {
        let row: Vec<String> = fl
            .faces()
            .iter()
            .filter(|f| f.dim == d)
            .map(|f| f.rays.to_string())
            .collect();
        if !row.is_empty() {
            out += &format!("dim {d}: {}\n", row.join(" "));
        }
    }
    out += "facets:\n";
    for f in fl.facets() {
        out += &format!("  {}  normal {}\n", f.rays, fmt_vec(&f.normal));
    }
    out
}

pub fn support_json(fl: &FaceLattice, s: &SupportSet) -> Value {
    json!({
        "support": s.face_ids().iter().map(|&id| json!({
            "rays": rayset_value(&fl.face(id).rays),
            "dim": fl.face(id).dim,
        })).collect::<Vec<_>>(),
    })
}

pub fn support_table(fl: &FaceLattice, s: &SupportSet) -> String {
    if s.is_empty() {
        return "support: (empty)\n".to_string();
    }
    let mut out = String::from("support:\n");
    for &id in s.face_ids() {
        let f = fl.face(id);
        out += &format!("  {} (dim {})\n", f.rays, f.dim);
    }
    out
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({
        "universe": k.universe(),
        "faces": k.faces().map(|f| rayset_value(&f)).collect::<Vec<_>>(),
    })
}

pub fn complex_table(k: &SimplicialComplex) -> String {
    let mut out = format!("cosupport: {} faces\n", k.n_faces());
    let mut by_size: Vec<Vec<String>> = Vec::new();
    for f in k.faces() {
        let s = f.len();
        if by_size.len() <= s {
            by_size.resize(s + 1, Vec::new());
        }
        by_size[s].push(f.to_string());
    }
    for (s, row) in by_size.iter().enumerate() {
        if !row.is_empty() {
            out += &format!("  size {s}: {}\n", row.join(" "));
        }
    }
    out
}

pub fn chamber_json(r: &ChamberReport) -> Value {
    let mut m = Map::new();
    m.insert("pi".into(), rayset_value(&r.pi));
    m.insert("strict_nonempty".into(), Value::Bool(r.strict_nonempty));
    m.insert(
        "semistrict_nonempty".into(),
        Value::Bool(r.semistrict_nonempty),
    );
    m.insert(
        "lattice_witness".into(),
        match &r.lattice_witness {
            Some(w) => int_vector(w),
            None => Value::Null,
        },
    );
    m.insert("recession_dim".into(), json!(r.recession_dim));
    m.insert("bounded".into(), Value::Bool(r.bounded));
    m.insert("cones_intersect".into(), Value::Bool(r.cones_intersect));
    m.insert("cohomology".into(), dims_value(&r.cohomology));
    Value::Object(m)
}

pub fn chambers_json(divisor: &Divisor, reports: &[ChamberReport]) -> Value {
    json!({
        "divisor": int_vector(&divisor.coefficients),
        "chambers": reports.iter().map(chamber_json).collect::<Vec<_>>(),
    })
}

pub fn chambers_table(reports: &[ChamberReport]) -> String {
    let mut rows: Vec<[String; 7]> = vec![[
        "Pi".into(),
        "strict".into(),
        "lattice".into(),
        "rec".into(),
        "bounded".into(),
        "intersect".into(),
        "cohomology".into(),
    ]];
    for r in reports {
        rows.push([
            r.pi.to_string(),
            if r.strict_nonempty { "yes" } else { "no" }.into(),
            r.lattice_witness
                .as_ref()
                .map(|w| fmt_vec(w))
                .unwrap_or_else(|| "-".into()),
            r.recession_dim.to_string(),
            if r.bounded { "yes" } else { "no" }.into(),
            if r.cones_intersect { "yes" } else { "no" }.into(),
            fmt_dims(&r.cohomology),
        ]);
    }
    render_columns(&rows)
}

fn render_columns<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            line += cell;
            if i + 1 < N {
                line += &" ".repeat(widths[i] - cell.chars().count() + 2);
            }
        }
        out += line.trim_end();
        out.push('\n');
    }
    out
}

pub fn cohomology_json(r: &CohomologyReport) -> Value {
    json!({
        "degree": int_vector(&r.degree),
        "sigma_m": rayset_value(&r.sigma_m),
        "dims": r.dims,
    })
}

pub fn cohomology_table(r: &CohomologyReport) -> String {
    let mut out = format!(
        "degree {}: Sigma_m = {}\n",
        fmt_vec(&r.degree),
        r.sigma_m
    );
    let nz: Vec<String> = r
        .dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, &d)| format!("H^{i} = {d}"))
        .collect();
    if nz.is_empty() {
        out += "all graded pieces vanish\n";
    } else {
        out += &format!("{}\n", nz.join(", "));
    }
    out
}

pub fn mcm_json(cert: &McmCertificate) -> Value {
    json!({
        "verdict": cert.verdict,
        "violation": cert.violation.as_ref().map(|v| json!({
            "pi": rayset_value(&v.pi),
            "level": v.level,
            "witness": int_vector(&v.witness),
        })),
        "subsets": cert.per_pi.iter().map(|(pi, d)| json!({
            "pi": rayset_value(pi),
            "disjunct": match d {
                McmDisjunct::CohomologyVanishes => json!("cohomology_vanishes"),
                McmDisjunct::NoLatticePoint { level, bound } => json!({
                    "no_lattice_point": { "level": level, "bound": bigint_value(bound) }
                }),
            },
        })).collect::<Vec<_>>(),
    })
}

pub fn mcm_table(cert: &McmCertificate) -> String {
    let mut out = String::new();
    if cert.verdict {
        out += "verdict: maximal Cohen-Macaulay\n";
        let pruned = cert
            .per_pi
            .iter()
            .filter(|(_, d)| matches!(d, McmDisjunct::CohomologyVanishes))
            .count();
        out += &format!(
            "checked {} subsets: {} with vanishing cohomology, {} with no lattice point\n",
            cert.per_pi.len(),
            pruned,
            cert.per_pi.len() - pruned
        );
        for (pi, d) in &cert.per_pi {
            if let McmDisjunct::NoLatticePoint { level, bound } = d {
                out += &format!(
                    "  {pi}: level {level} nonzero, no integer point within |m| <= {bound}\n"
                );
            }
        }
    } else {
        let v = cert.violation.as_ref().expect("false verdicts carry a violation");
        out += "verdict: NOT maximal Cohen-Macaulay\n";
        out += &format!(
            "violation: Pi = {}, level {} cohomology nonzero, realized at m = {}\n",
            v.pi,
            v.level,
            fmt_vec(&v.witness)
        );
    }
    out
}

pub fn classes_json(bound: u32, classes: &[Divisor]) -> Value {
    json!({
        "box": bound,
        "complete_within_box": true,
        "classes": classes.iter().map(|d| int_vector(&d.coefficients)).collect::<Vec<_>>(),
    })
}

pub fn classes_table(bound: u32, classes: &[Divisor]) -> String {
    let mut out = format!(
        "maximal Cohen-Macaulay classes with coefficients searched in [-{bound}, {bound}] \
         (complete within the searched box):\n"
    );
    for d in classes {
        out += &format!("  {}\n", fmt_vec(&d.coefficients));
    }
    out += &format!("total: {}\n", classes.len());
    out
}

pub fn singularity_json(fl: &FaceLattice, s: &SingularitySets) -> Value {
    json!({
        "levels": (0..=s.rank()).map(|i| json!({
            "level": i,
            "faces": s.level(i).iter().map(|&id| rayset_value(&fl.face(id).rays)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn singularity_table(fl: &FaceLattice, s: &SingularitySets) -> String {
    let mut out = String::new();
    for i in 0..=s.rank() {
        let ids = s.level(i);
        if ids.len() == fl.faces().len() {
            out += &format!("S_{i} = all {} faces\n", ids.len());
        } else if ids.is_empty() {
            out += &format!("S_{i} = {{}}\n");
        } else {
            let row: Vec<String> = ids.iter().map(|&id| fl.face(id).rays.to_string()).collect();
            out += &format!("S_{i} = {{ {} }}\n", row.join(" "));
        }
    }
    out
}

pub fn depth_json(d: usize) -> Value {
    json!({ "depth": d })
}
