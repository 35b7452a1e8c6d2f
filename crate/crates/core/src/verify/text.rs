use std::fmt::Write;

use super::report::{Outcome, SchurReport, VerificationReport};
use crate::algkit::QuiverData;

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::Bound => "BOUND",
    }
}

fn quiver_lines(out: &mut String, indent: &str, quiver: &QuiverData) {
    let dims: Vec<usize> = quiver.vertices.iter().map(|v| v.simple_dim).collect();
    let proj: Vec<usize> = quiver.vertices.iter().map(|v| v.projective_dim).collect();
    let _ = writeln!(out, "{indent}simple dims      {dims:?}");
    let _ = writeln!(out, "{indent}projective dims  {proj:?}");
    let _ = writeln!(out, "{indent}arrows           {:?}", quiver.arrows);
    let _ = writeln!(out, "{indent}cartan           {:?}", quiver.cartan);
    let _ = writeln!(out, "{indent}radical layers   {:?}", quiver.radical_layers);
    let vanishing: Vec<String> = quiver
        .composites
        .iter()
        .filter(|c| c.vanishes)
        .map(|c| format!("{}->{}->{}", c.path[0], c.path[1], c.path[2]))
        .collect();
    if !vanishing.is_empty() {
        let _ = writeln!(out, "{indent}vanishing paths  {}", vanishing.join(", "));
    }
}

fn schur_section(out: &mut String, title: &str, s: &SchurReport) {
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "  dim {} on a module of dim {}, basic dim {}", s.dim, s.module_dim, s.basic_dim);
    quiver_lines(out, "  ", &s.quiver);
    let so = &s.socle;
    let _ = writeln!(out, "  socle of basic   left {} / right {} / both {}", so.left, so.right, so.two_sided);
    if let Some(img) = &s.image {
        let _ = writeln!(out, "  V = k[G/B]       factors {:?}, projective {}", img.v_composition, img.v_projective);
        let _ = writeln!(out, "  W (sum zero)     factors {:?}, projective {}", img.w_composition, img.w_projective);
        let _ = writeln!(out, "  permutations     {} distinct", img.distinct_permutations);
    }
}

/// A human-readable rendering; unlike the JSON form it includes stage timings.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let m = r.m.map_or("-".to_string(), |m| m.to_string());
    let _ = writeln!(out, "q = {}  (q mod 4 = {}, m = {})  {}", r.q, r.q_mod_4, m, outcome_label(r.outcome));
    let _ = writeln!(out, "seed {}, field policy {}, k = GF(2^{})", r.seed, r.field_policy, r.coefficient_degree);
    for f in &r.fields {
        let _ = writeln!(out, "  {:<20} GF({}^{}) modulus {:?}", f.role, f.characteristic, f.degree, f.modulus);
    }
    if let Some(s) = &r.sylow {
        let _ = writeln!(out, "\nSylow 2-subgroup: {:?}, order {}, |Z| = {}", s.kind, s.order, s.center_order);
        for (name, g) in &s.generators {
            let _ = writeln!(out, "  {name} = {g:?}");
        }
        let _ = writeln!(out, "  relations: {}", s.relations.join(", "));
    }
    if !r.centric_classes.is_empty() {
        let _ = writeln!(out, "\nCentric classes");
        let _ = writeln!(
            out,
            "  {:>3}  {:<28} {:>5} {:>6} {:>8} {:<28} {:<8}",
            "#", "type", "order", "size", "|Aut_F|", "Aut_Fbar", "support"
        );
        for (i, c) in r.centric_classes.iter().enumerate() {
            let s = &c.summary;
            let _ = writeln!(
                out,
                "  {:>3}  {:<28} {:>5} {:>6} {:>8} {:<28} {:<8}",
                i,
                s.structure,
                s.order,
                s.class_size,
                s.aut_f_order,
                format!("{} (order {})", s.aut_fbar_structure, s.aut_fbar_order),
                if c.in_support { "yes" } else { "no" }
            );
        }
    }
    if let Some(w) = &r.wfca {
        let _ = writeln!(out, "\nWeighted fusion category algebra");
        let _ =
            writeln!(out, "  category dim {}, corner dim {}, basic dim {}", w.category_dim, w.corner_dim, w.basic_dim);
        let d = &w.decomposition;
        let _ = writeln!(
            out,
            "  diagonal {:?}, off-diagonal {}, J {}, J^2 {}",
            d.diagonal, d.off_diagonal, d.radical, d.radical_squared
        );
        quiver_lines(&mut out, "  ", &w.quiver);
    }
    if let Some(s) = &r.schur_image {
        out.push('\n');
        schur_section(&mut out, "q-Schur algebra, image route", s);
    }
    if let Some(s) = &r.schur_hecke {
        out.push('\n');
        schur_section(&mut out, "q-Schur algebra, Hecke route", s);
    }
    if let Some(b) = &r.principal_block {
        let _ = writeln!(
            out,
            "\nPrincipal block: {} classes, {} blocks, acts as identity on k[G/B]: {}",
            b.class_count,
            b.blocks.len(),
            b.acts_as_identity
        );
    }
    if !r.socle_quotients.is_empty() {
        let _ = writeln!(out, "\nSocle quotients of the Schur basic algebra");
        for s in &r.socle_quotients {
            let _ = writeln!(out, "  {:?}: socle {}, quotient {}", s.side, s.socle_dim, s.quotient_dim);
        }
    }
    if let Some(c) = &r.counts {
        let _ = writeln!(
            out,
            "\nSimple counts: fusion {:?}, Schur {:?}, partitions of 2 = {}",
            c.fusion_simples, c.schur_simples, c.partitions_of_two
        );
    }
    match (&r.witness, r.socle_side) {
        (Some(w), Some(side)) => {
            let _ = writeln!(out, "Isomorphism witness ({side:?} socle), dim {}:", w.dim);
            for row in &w.rows {
                let _ = writeln!(out, "  {row:?}");
            }
        }
        _ if r.stages_full => {
            let _ = writeln!(out, "No isomorphism witness");
        }
        _ => {}
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "\nAssertions");
    let width = r.assertions.iter().map(|a| a.stage.len() + a.name.len() + 1).max().unwrap_or(0);
    for a in &r.assertions {
        let label = format!("{}/{}", a.stage, a.name);
        let _ = writeln!(
            out,
            "  [{}] {:<width$}  {:<8} {}",
            if a.passed { "ok" } else { "!!" },
            label,
            format!("{:?}", a.source).to_lowercase(),
            a.detail
        );
    }
    for e in &r.errors {
        let _ = writeln!(out, "  error in {}: {}", e.stage, e.message);
    }
    if !r.timings.is_empty() {
        let total: f64 = r.timings.iter().map(|t| t.1).sum();
        let parts: Vec<String> = r.timings.iter().map(|(s, t)| format!("{s} {t:.3}s")).collect();
        let _ = writeln!(out, "\ntimings: {} (total {total:.2}s)", parts.join(", "));
    }
    out
}
