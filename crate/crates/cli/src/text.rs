//! Plain text rendering.

use std::fmt::Display;

use isofact::classify::{Flag, Witness};
use isofact::natvec::format_generators;
use isofact::{NatVec, Semigroup};

pub fn semigroup(s: &Semigroup) -> String {
    angle(s.gens())
}

pub fn angle(gens: &[NatVec]) -> String {
    format!("⟨{}⟩", format_generators(gens))
}

/// Factorizations always keep their parentheses, even of length one.
pub fn fact(x: &NatVec) -> String {
    let parts: Vec<String> = x.coords().iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn set<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn facts<'a>(items: impl IntoIterator<Item = &'a NatVec>) -> String {
    set(items.into_iter().map(fact))
}

pub fn tuple(items: &[Option<u64>]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.map_or("-".to_string(), |v| v.to_string())).collect();
    format!("({})", parts.join(","))
}

/// Generators listed in the given order.
pub fn order(s: &Semigroup, order: &[usize]) -> String {
    let gens: Vec<NatVec> = order.iter().map(|&i| s.gen(i).clone()).collect();
    format!("({})", format_generators(&gens))
}

pub fn one_based(idx: &[usize]) -> String {
    set(idx.iter().map(|i| i + 1))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn flag(s: &Semigroup, f: &Flag) -> String {
    let head = match f.holds {
        Some(b) => yes_no(b).to_string(),
        None => "unknown".to_string(),
    };
    let mut out = head;
    if let Some(w) = &f.witness {
        out.push_str(&format!(" [{}]", witness(s, w)));
    }
    if let Some(n) = &f.note {
        out.push_str(&format!(" ({n})"));
    }
    out
}

fn witness(s: &Semigroup, w: &Witness) -> String {
    match w {
        Witness::Arrangement { order: o } => format!("arrangement {}", order(s, o)),
        Witness::Constants(k) => format!("arrangement {}", order(s, &k.arrangement)),
        Witness::Box(b) => {
            let gens: Vec<String> = b.generators.iter().map(|&i| s.gen(i).to_string()).collect();
            let mu: Vec<String> = b.bounds.iter().map(u64::to_string).collect();
            format!("box over rays {}: generators ({}) up to ({})", one_based(&b.rays), gens.join(","), mu.join(","))
        }
        Witness::Element { element } => format!("element {}", element.0),
        Witness::Pair { left, right } => format!("{} and {} are incomparable", left.0, right.0),
        Witness::Chain { elements } => {
            let v: Vec<String> = elements.iter().map(|e| e.0.to_string()).collect();
            v.join(" < ")
        }
    }
}
