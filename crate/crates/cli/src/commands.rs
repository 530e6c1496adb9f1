use std::fmt::Write as _;

use clap::{Args, Subcommand};
use isofact::betti::{self, BettiProfile};
use isofact::classify::{self, BoundStatus, Flag, CHAIN};
use isofact::constants::{self, Arrangement};
use isofact::construct::{self, BettiDivisibleParams, GluingSpec};
use isofact::explore::{self, Corpus, HarnessReport};
use isofact::natvec::{parse_element, parse_generators};
use isofact::{factor, isolated, Error, NatVec, Result, Semigroup};
use serde_json::{json, Value};

use crate::text;
use crate::{Global, Report};

#[derive(Args, Debug)]
pub struct GensArgs {
    /// Generators, e.g. `24,26,36,39` or `(1,0);(0,2);(0,3)`.
    #[arg(long)]
    pub gens: String,
    /// Arrangement given as the generators in the wanted order.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub sg: GensArgs,
}

#[derive(Args, Debug)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub sg: GensArgs,
    /// Element, e.g. `80` or `(1,1,1)`.
    #[arg(long)]
    pub element: String,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub sg: GensArgs,
    /// Also run the theorem checks and bounds on this semigroup.
    #[arg(long)]
    pub theorems: bool,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Generators `n_i = f_i prod(a) / a_i` from parameters.
    Params {
        #[arg(long)]
        a: String,
        #[arg(long)]
        f: String,
    },
    /// Parameters of a Betti divisible numerical semigroup.
    Recover {
        #[arg(long)]
        gens: String,
    },
}

#[derive(Args, Debug)]
pub struct GlueArgs {
    /// Numerical gluing: S1.
    #[arg(long, requires_all = ["right", "a1", "a2"], conflicts_with = "gens")]
    pub left: Option<String>,
    /// Numerical gluing: S2.
    #[arg(long)]
    pub right: Option<String>,
    #[arg(long)]
    pub a1: Option<u64>,
    #[arg(long)]
    pub a2: Option<u64>,
    /// Affine check: the glued semigroup.
    #[arg(long, requires_all = ["part", "at"])]
    pub gens: Option<String>,
    /// Affine check: 1-based indices of the first part.
    #[arg(long)]
    pub part: Option<String>,
    /// Affine check: the gluing element `d`.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Least Frobenius number among Betti divisible semigroups.
    MinFrobeniusBettiDivisible {
        /// Least embedding dimension.
        #[arg(long)]
        edim: usize,
        #[arg(long)]
        max_frobenius: i64,
        /// Least number of Betti elements.
        #[arg(long, default_value_t = 2)]
        min_betti: usize,
    },
    /// Every Betti divisible semigroup in the region.
    BettiDivisible {
        #[arg(long)]
        edim: usize,
        #[arg(long)]
        max_frobenius: i64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Every numerical semigroup of genus at most N.
    #[arg(long, required_unless_present = "corpus")]
    pub genus: Option<u32>,
    /// One semigroup per line; `#` starts a comment.
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<String>,
    /// Add gluings separating the families of the chain.
    #[arg(long)]
    pub with_gluings: bool,
    /// Violations listed in text output.
    #[arg(long, default_value_t = 20)]
    pub show: usize,
}

fn load(g: &Global, gens: &str) -> Result<Semigroup> {
    let s = Semigroup::parse(gens)?;
    Ok(match g.fiber_cap {
        Some(c) => s.with_fiber_cap(c),
        None => s,
    })
}

fn index_of(s: &Semigroup, v: &NatVec) -> Result<usize> {
    (0..s.embedding_dimension())
        .find(|&i| s.gen(i) == v)
        .ok_or_else(|| Error::InvalidArrangement(format!("{v} is not a minimal generator")))
}

/// The requested arrangement, or the stored order. `None` for
/// non-simplicial semigroups.
fn arrangement(s: &Semigroup, order: Option<&str>) -> Result<Option<Arrangement>> {
    let Some(order) = order else {
        return if s.is_simplicial() { Arrangement::stored(s).map(Some) } else { Ok(None) };
    };
    let idx = parse_generators(order)?.iter().map(|v| index_of(s, v)).collect::<Result<Vec<_>>>()?;
    Arrangement::new(s, idx).map(Some)
}

fn order_of(s: &Semigroup, arr: Option<&Arrangement>) -> Vec<usize> {
    arr.map_or_else(|| (0..s.embedding_dimension()).collect(), |a| a.order().to_vec())
}

fn header(s: &Semigroup, arr: Option<&Arrangement>) -> (String, Value) {
    let order = order_of(s, arr);
    let mut t = format!("semigroup {}\n", text::semigroup(s));
    let _ = writeln!(t, "arrangement {}", text::order(s, &order));
    let j = json!({
        "generators": s.gens(),
        "kind": s.kind(),
        "embedding_dimension": s.embedding_dimension(),
        "rank": s.rank(),
        "simplicial": s.is_simplicial(),
        "arrangement": order,
    });
    (t, j)
}

fn bounded_note(p: &BettiProfile) -> Option<String> {
    match (p.complete, p.degree_bound) {
        (false, Some(b)) => Some(format!("Betti elements up to total degree {b}; larger ones may be missing")),
        _ => None,
    }
}

fn betti_line(p: &BettiProfile) -> String {
    format!("Betti {}", text::set(p.values()))
}

pub fn analyze(g: &Global, a: &AnalyzeArgs) -> Result<Report> {
    let s = load(g, &a.sg.gens)?;
    let arr = arrangement(&s, a.sg.order.as_deref())?;
    let (mut t, head) = header(&s, arr.as_ref());
    let p = betti::betti_profile_bounded(&s, g.degree_bound)?;
    let ip = isolated::isolated_profile(&s, &p)?;
    let mut j = json!({ "command": "analyze", "semigroup": head });

    if s.is_numerical() {
        let (m, f, genus) = (s.multiplicity()?, s.frobenius()?, s.genus()?);
        let _ = writeln!(t, "multiplicity {m}, Frobenius number {f}, genus {genus}");
        j["multiplicity"] = json!(m);
        j["frobenius"] = json!(f);
        j["genus"] = json!(genus);
    } else {
        let _ = writeln!(t, "affine, rank {}, embedding dimension {}", s.rank(), s.embedding_dimension());
    }
    if let Some(n) = bounded_note(&p) {
        let _ = writeln!(t, "note: {n}");
    }
    let _ = writeln!(t, "{}", betti_line(&p));
    for b in &ip.betti {
        if b.isolated.is_empty() {
            let _ = writeln!(t, "  {}: no isolated factorizations", b.element.0);
        } else {
            let _ = writeln!(t, "  {}: nc {}, isolated {}", b.element.0, b.nc, text::facts(&b.isolated));
        }
    }
    let _ = writeln!(t, "Betti minimals {}", text::set(ip.betti_minimals.iter().map(|e| &e.0)));
    let _ = writeln!(t, "I_b = {}, i_b = {}", text::facts(&ip.ib.factorizations), ip.i_b);
    if let Some(is) = &ip.is {
        if is.len() <= 40 {
            let _ = writeln!(t, "I_s = {}, i_s = {}", text::facts(&is.factorizations), is.len());
        } else {
            let _ = writeln!(t, "I_s has {} factorizations, i_s = {}", is.len(), is.len());
        }
    }
    if let Some(i) = ip.i {
        let _ = writeln!(t, "i = {i}");
    }
    let c: Vec<Option<u64>> = (0..s.embedding_dimension()).map(|i| ip.c_atoms.get(&i).copied()).collect();
    let _ = writeln!(t, "c = {}", text::tuple(&c));
    let _ = writeln!(t, "𝒞 = {}", text::set(ip.c_atoms.keys().map(|i| i + 1)));

    j["betti"] = json!(p.values().iter().map(|v| isofact::Element(v.clone())).collect::<Vec<_>>());
    j["betti_profile"] = json!(&*p);
    j["isolated"] = json!(ip);

    if let Some(arr) = &arr {
        let k = constants::arrangement_constants(&s, arr)?;
        let _ = writeln!(
            t,
            "constants for {}: c̄ = {}, c* = {}, α = {}",
            text::order(&s, arr.order()),
            text::tuple(&k.c_bar),
            text::tuple(&k.c_star),
            text::tuple(&k.alpha)
        );
        let _ = writeln!(t, "free for arrangement {}: {}", text::order(&s, arr.order()), text::yes_no(k.is_free()));
        j["free_for_arrangement"] = json!(k.is_free());
        j["constants"] = json!(k);
    }
    if p.complete {
        let rel = betti::minimal_presentation(&s)?;
        let _ = writeln!(t, "minimal presentation of size {}", rel.len());
        for r in &rel {
            let _ = writeln!(t, "  {}: {} = {}", r.element.0, text::fact(&r.left), text::fact(&r.right));
        }
        let ci = betti::is_complete_intersection(&s)?;
        let _ = writeln!(t, "complete intersection: {}", text::yes_no(ci));
        j["presentation"] = json!(rel);
        j["complete_intersection"] = json!(ci);
    }
    Ok(Report::ok(t, j))
}

pub fn factorize(g: &Global, a: &FactorizeArgs) -> Result<Report> {
    let s = load(g, &a.sg.gens)?;
    let arr = arrangement(&s, a.sg.order.as_deref())?;
    let (mut t, head) = header(&s, arr.as_ref());
    let m = parse_element(&a.element)?;
    let f = factor::fiber(&s, &m)?;
    let word = if f.denumerant() == 1 { "factorization" } else { "factorizations" };
    let _ = writeln!(t, "element {m}: {} {word}, nc {}", f.denumerant(), f.nc());
    for (k, class) in f.classes.iter().enumerate() {
        let members: Vec<String> = class.iter().map(|&i| text::fact(&f.factorizations[i])).collect();
        let _ = writeln!(t, "  R-class {}: {}", k + 1, members.join(" "));
    }
    let iso = f.isolated();
    if iso.is_empty() {
        let _ = writeln!(t, "{m}: no isolated factorizations");
    } else {
        let _ = writeln!(t, "isolated {}", text::facts(&iso));
    }
    let j = json!({ "command": "factorize", "semigroup": head, "fiber": f, "isolated": iso });
    Ok(Report::ok(t, j))
}

pub fn betti(g: &Global, a: &GensArgs) -> Result<Report> {
    let s = load(g, &a.gens)?;
    let arr = arrangement(&s, a.order.as_deref())?;
    let (mut t, head) = header(&s, arr.as_ref());
    let p = betti::betti_profile_bounded(&s, g.degree_bound)?;
    if let Some(n) = bounded_note(&p) {
        let _ = writeln!(t, "note: {n}");
    }
    let _ = writeln!(t, "{}", betti_line(&p));
    for f in &p.elements {
        let classes: Vec<String> = f.classes.iter().map(|c| text::facts(c.iter().map(|&i| &f.factorizations[i]))).collect();
        let _ = writeln!(t, "  {}: {}", f.element.0, classes.join(" | "));
    }
    let mut j = json!({
        "command": "betti",
        "semigroup": head,
        "betti": p.values().iter().map(|v| isofact::Element(v.clone())).collect::<Vec<_>>(),
        "profile": &*p,
    });
    if p.complete {
        let rel = betti::minimal_presentation(&s)?;
        let _ = writeln!(t, "minimal presentation of size {}", rel.len());
        for r in &rel {
            let _ = writeln!(t, "  {}: {} = {}", r.element.0, text::fact(&r.left), text::fact(&r.right));
        }
        j["presentation"] = json!(rel);
    }
    Ok(Report::ok(t, j))
}

pub fn classify(g: &Global, a: &ClassifyArgs) -> Result<Report> {
    let s = load(g, &a.sg.gens)?;
    let arr = arrangement(&s, a.sg.order.as_deref())?;
    let (mut t, head) = header(&s, arr.as_ref());
    let r = classify::classify_bounded(&s, g.degree_bound)?;
    let mut j = json!({ "command": "classify", "semigroup": head, "classification": r });

    if let Some(arr) = &arr {
        let free = classify::is_free(&s, arr)?;
        let _ = writeln!(t, "free for arrangement {}: {}", text::order(&s, arr.order()), text::yes_no(free));
        j["free_for_arrangement"] = json!(free);
    }
    let rows: [(&str, &Flag); 16] = [
        ("Cohen-Macaulay", &r.cohen_macaulay),
        ("Gorenstein", &r.gorenstein),
        ("free for the stored order", &r.free_for_stored),
        ("free for some arrangement", &r.free_some_arrangement),
        ("free for every arrangement", &r.free_all_arrangements),
        ("complete intersection", &r.complete_intersection),
        ("rectangular", &r.rectangular),
        ("c-rectangular", &r.c_rectangular),
        ("α-rectangular", &r.alpha_rectangular),
        ("α-rectangular for every generator", &r.alpha_rectangular_every_generator),
        ("Betti sorted", &r.betti_sorted),
        ("Betti isolated sorted", &r.betti_isolated_sorted),
        ("Betti divisible", &r.betti_divisible),
        ("Betti isolated divisible", &r.betti_isolated_divisible),
        ("single Betti element", &r.single_betti),
        ("single Betti minimal", &r.single_betti_minimal),
    ];
    for (name, f) in rows {
        let _ = writeln!(t, "{name}: {}", text::flag(&s, f));
    }
    for row in &r.by_ray_set {
        let rays: Vec<String> = row.rays.iter().map(|&i| s.gen(i).to_string()).collect();
        let _ = writeln!(
            t,
            "rays {{{}}}: rectangular {}, c-rectangular {}, α-rectangular {}",
            rays.join(","),
            text::flag(&s, &row.rectangular),
            text::flag(&s, &row.c_rectangular),
            text::flag(&s, &row.alpha_rectangular)
        );
    }
    if let Some(levels) = r.chain_levels() {
        let members: Vec<&str> = CHAIN.iter().zip(levels).filter(|(_, b)| *b).map(|(n, _)| *n).collect();
        let _ = writeln!(t, "chain families: {}", if members.is_empty() { "none".to_string() } else { members.join(", ") });
    }

    let mut status = 0;
    if a.theorems {
        let checks = classify::check_equivalence_theorems(&s)?;
        let bounds = classify::verify_bounds(&s)?;
        let mut bad = r.chain_violations().len();
        for c in &checks {
            let scope = c.scope.as_deref().map(|x| format!(" [{x}]")).unwrap_or_default();
            let conds: Vec<String> = c.conditions.iter().map(|k| format!("{}={}", k.name, k.holds)).collect();
            let _ = writeln!(t, "{} {}{}: {}", if c.consistent { "ok  " } else { "FAIL" }, c.id, scope, conds.join(" "));
            bad += usize::from(!c.consistent);
        }
        for b in &bounds {
            let line = match b.status {
                BoundStatus::Skipped => format!("skip {} ({})", b.id, b.note.as_deref().unwrap_or("")),
                BoundStatus::Pass => format!("ok   {}: {} with {} <= {}", b.id, b.relation, b.lhs, b.rhs),
                BoundStatus::Fail => format!("FAIL {}: {} with {} > {}", b.id, b.relation, b.lhs, b.rhs),
            };
            let _ = writeln!(t, "{line}");
            bad += usize::from(b.status == BoundStatus::Fail);
        }
        let _ = writeln!(t, "{bad} violations");
        j["theorems"] = json!(checks);
        j["bounds"] = json!(bounds);
        j["violations"] = json!(bad);
        status = u8::from(bad > 0);
    }
    Ok(Report { text: t, json: j, status })
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    parse_generators(s)?
        .into_iter()
        .map(|v| v.as_scalar().ok_or_else(|| Error::Parse(format!("expected a list of integers, got {s:?}"))))
        .collect()
}

pub fn construct(g: &Global, c: &ConstructCmd) -> Result<Report> {
    match c {
        ConstructCmd::Params { a, f } => {
            let params = BettiDivisibleParams { a: parse_u64_list(a)?, f: parse_u64_list(f)? };
            let s = construct::betti_divisible_from_params(&params)?;
            let s = match g.fiber_cap {
                Some(cap) => s.with_fiber_cap(cap),
                None => s,
            };
            let (mut t, head) = header(&s, None);
            let predicted = params.predicted_betti()?;
            let computed: Vec<u64> = betti::betti_profile(&s)?.values().iter().map(|v| v[0]).collect();
            let (pf, cf) = (params.frobenius()?, s.frobenius()?);
            if predicted != computed || pf != cf {
                return Err(Error::Invariant(format!(
                    "parameters predict Betti {predicted:?} and F = {pf}, computed {computed:?} and F = {cf}"
                )));
            }
            let _ = writeln!(t, "Betti {} (predicted {})", text::set(&computed), text::set(&predicted));
            let _ = writeln!(t, "Frobenius number {cf} (predicted {pf})");
            let back = construct::recover_params(&s)?;
            let round_trip = back.as_ref().map(|r| r.params == params);
            if let Some(r) = &back {
                let _ = writeln!(t, "recovered a = {:?}, f = {:?}", r.params.a, r.params.f);
            }
            let j = json!({
                "command": "construct params",
                "semigroup": head,
                "params": params,
                "betti": computed,
                "predicted_betti": predicted,
                "frobenius": cf,
                "recovered": back,
                "round_trip": round_trip,
            });
            Ok(Report::ok(t, j))
        }
        ConstructCmd::Recover { gens } => {
            let s = load(g, gens)?;
            let (mut t, head) = header(&s, None);
            let back = construct::recover_params(&s)?;
            match &back {
                Some(r) => {
                    let _ = writeln!(t, "a = {:?}, f = {:?}", r.params.a, r.params.f);
                    let _ = writeln!(t, "parameter order {}", text::order(&s, &r.order));
                }
                None => {
                    let _ = writeln!(t, "no parameters: not Betti divisible");
                }
            }
            let j = json!({ "command": "construct recover", "semigroup": head, "recovered": back });
            Ok(Report::ok(t, j))
        }
    }
}

pub fn glue(g: &Global, a: &GlueArgs) -> Result<Report> {
    if let Some(gens) = &a.gens {
        let s = load(g, gens)?;
        let (mut t, head) = header(&s, None);
        let part: Vec<usize> = parse_u64_list(a.part.as_deref().unwrap_or(""))?
            .into_iter()
            .map(|i| i.checked_sub(1).map(|i| i as usize).ok_or_else(|| Error::Parse("indices are 1-based".into())))
            .collect::<Result<_>>()?;
        let d = parse_element(a.at.as_deref().unwrap_or(""))?;
        let chk = construct::validate_affine_gluing(&s, &part, &d, g.degree_bound)?;
        let _ = writeln!(t, "part {} glued at {d}", text::one_based(&part));
        let _ = writeln!(t, "d in both parts: {}", text::yes_no(chk.d_in_both));
        let _ = writeln!(t, "predicted Betti {}", text::set(chk.predicted.iter().map(|e| &e.0)));
        let _ = writeln!(t, "computed Betti {}", text::set(chk.computed.iter().map(|e| &e.0)));
        let _ = writeln!(t, "gluing: {}", text::yes_no(chk.matches));
        let j = json!({ "command": "glue", "semigroup": head, "part": part, "d": d, "check": chk });
        return Ok(Report::ok(t, j));
    }
    let (Some(l), Some(r), Some(a1), Some(a2)) = (&a.left, &a.right, a.a1, a.a2) else {
        return Err(Error::Parse("give --left, --right, --a1 and --a2, or --gens, --part and --at".into()));
    };
    let spec = GluingSpec { left: load(g, l)?, right: load(g, r)?, a1, a2 };
    let glued = construct::glue_numerical(&spec)?;
    let s = &glued.semigroup;
    let (mut t, head) = header(s, None);
    let computed: Vec<u64> = betti::betti_profile(s)?.values().iter().map(|v| v[0]).collect();
    if computed != glued.predicted_betti {
        return Err(Error::Invariant(format!("gluing predicts Betti {:?}, computed {computed:?}", glued.predicted_betti)));
    }
    let _ = writeln!(t, "{a1}{} + {a2}{}", text::semigroup(&spec.left), text::semigroup(&spec.right));
    let _ = writeln!(t, "Betti {} (predicted {})", text::set(&computed), text::set(&glued.predicted_betti));
    let j = json!({
        "command": "glue",
        "semigroup": head,
        "left": spec.left.gens(),
        "right": spec.right.gens(),
        "a1": a1,
        "a2": a2,
        "betti": computed,
        "predicted_betti": glued.predicted_betti,
    });
    Ok(Report::ok(t, j))
}

pub fn search(g: &Global, c: &SearchCmd) -> Result<Report> {
    let exec = g.exec();
    match *c {
        SearchCmd::MinFrobeniusBettiDivisible { edim, max_frobenius, min_betti } => {
            let hit = explore::min_frobenius_betti_divisible(edim, max_frobenius, min_betti, exec)?;
            let s = Semigroup::numerical(&hit.generators)?;
            let betti: Vec<u64> = betti::betti_profile(&s)?.values().iter().map(|v| v[0]).collect();
            let mut t = format!("{} : {}\n", hit.frobenius, text::semigroup(&s));
            let _ = writeln!(t, "a = {:?}, f = {:?}", hit.params.a, hit.params.f);
            let _ = writeln!(t, "Betti {}", text::set(&betti));
            let j = json!({
                "command": "search min-frobenius-betti-divisible",
                "edim": edim,
                "max_frobenius": max_frobenius,
                "min_betti": min_betti,
                "frobenius": hit.frobenius,
                "generators": hit.generators,
                "params": hit.params,
                "betti": betti,
            });
            Ok(Report::ok(t, j))
        }
        SearchCmd::BettiDivisible { edim, max_frobenius } => {
            let hits = explore::betti_divisible_up_to(edim, max_frobenius, exec)?;
            let mut t = String::new();
            for h in &hits {
                let gens: Vec<NatVec> = h.generators.iter().map(|&x| NatVec::scalar(x)).collect();
                let _ = writeln!(t, "{} : {}", h.frobenius, text::angle(&gens));
            }
            let _ = writeln!(t, "{} semigroups", hits.len());
            let j = json!({ "command": "search betti-divisible", "edim": edim, "max_frobenius": max_frobenius, "hits": hits });
            Ok(Report::ok(t, j))
        }
    }
}

pub fn verify(g: &Global, a: &VerifyArgs) -> Result<Report> {
    let exec = g.exec();
    let mut corpus = Corpus::new();
    if let Some(genus) = a.genus {
        corpus.extend(explore::enumerate_numerical_by_genus(genus, exec)?);
    }
    if let Some(path) = &a.corpus {
        let body = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        corpus.extend(Corpus::from_text(&body, path)?);
    }
    if a.with_gluings {
        corpus.extend(explore::chain_witness_gluings()?);
    }
    let r = explore::run_theorem_harness(&corpus, exec);
    let t = verify_text(&r, a);
    let j = json!({
        "command": "verify",
        "genus": a.genus,
        "corpus": a.corpus,
        "with_gluings": a.with_gluings,
        "report": r,
        "violation_count": r.violation_count(),
    });
    Ok(Report { text: t, json: j, status: u8::from(r.violation_count() > 0) })
}

fn verify_text(r: &HarnessReport, a: &VerifyArgs) -> String {
    let mut t = String::new();
    let mut src = Vec::new();
    if let Some(gn) = a.genus {
        src.push(format!("genus <= {gn}"));
    }
    if let Some(p) = &a.corpus {
        src.push(p.clone());
    }
    if a.with_gluings {
        src.push("chain gluings".to_string());
    }
    let _ = writeln!(t, "corpus: {} semigroups ({})", r.semigroups, src.join(", "));
    let _ = writeln!(t, "theorem checks {}, bound checks {}", r.theorem_checks, r.bound_checks);
    let _ = writeln!(t, "theorems (checked / all true / premise false / violated)");
    for (id, x) in &r.theorems {
        let _ = writeln!(t, "  {id}: {} / {} / {} / {}", x.checked, x.all_true, x.all_false, x.violated);
    }
    let _ = writeln!(t, "bounds (passed / tight / skipped / failed)");
    for (id, x) in &r.bounds {
        let _ = writeln!(t, "  {id}: {} / {} / {} / {}", x.passed, x.tight, x.skipped, x.failed);
    }
    let _ = writeln!(t, "chain members");
    for (name, n) in &r.chain_members {
        let _ = writeln!(t, "  {name}: {n}");
    }
    let _ = writeln!(t, "strictness");
    for s in &r.strictness {
        let w = s.witness.as_deref().unwrap_or("no witness");
        let _ = writeln!(t, "  {} < {}: {w}", s.smaller, s.larger);
    }
    let _ = writeln!(t, "free semigroups with c = c̄: {} of {}", r.c_bar.c_equals_c_bar, r.c_bar.free);
    for v in r.violations.iter().take(a.show) {
        let scope = v.scope.as_deref().map(|x| format!(" [{x}]")).unwrap_or_default();
        let detail = v.detail.as_deref().map(|x| format!(": {x}")).unwrap_or_default();
        let _ = writeln!(t, "violation {} {}{scope}{detail}", v.semigroup, v.theorem);
    }
    let _ = writeln!(t, "{} violations", r.violation_count());
    t
}
