//! Words and normal forms in right-angled Artin and Coxeter groups.
//!
//! A normal form is a reduced word that is lexicographically least among
//! all words obtained from it by swapping adjacent commuting letters.
//! Letters compare by generator position in the defining graph, and a
//! positive letter precedes its inverse.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::gamma::{DefiningGraph, Generator};
use super::RaError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    #[default]
    Artin,
    Coxeter,
}

impl FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "artin" => Ok(GroupKind::Artin),
            "coxeter" => Ok(GroupKind::Coxeter),
            other => Err(format!("unknown group kind {other:?} (expected artin or coxeter)")),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Artin => "artin",
            GroupKind::Coxeter => "coxeter",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    /// Always false in Coxeter groups.
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self, kind: GroupKind) -> Self {
        match kind {
            GroupKind::Artin => Self { gen: self.gen, inverse: !self.inverse },
            GroupKind::Coxeter => self,
        }
    }
}

/// All letters of the group: each generator, and its inverse for Artin groups.
pub fn alphabet(gamma: &DefiningGraph, kind: GroupKind) -> Vec<Letter> {
    let mut out = Vec::new();
    for g in 0..gamma.order() {
        out.push(Letter::new(g, false));
        if kind == GroupKind::Artin {
            out.push(Letter::new(g, true));
        }
    }
    out
}

/// A group element in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    letters: Vec<Letter>,
}

impl NormalForm {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Syllables `(generator, exponent)`; Coxeter exponents are always 1.
    pub fn syllables(&self, gamma: &DefiningGraph) -> Vec<(Generator, i64)> {
        let _ = gamma;
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for l in &self.letters {
            let e = if l.inverse { -1 } else { 1 };
            match out.last_mut() {
                Some((g, k)) if *g == l.gen && (*k > 0) == (e > 0) => *k += e,
                _ => out.push((l.gen, e)),
            }
        }
        out
    }

    pub fn display(&self, gamma: &DefiningGraph) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.syllables(gamma)
            .iter()
            .map(|&(g, k)| if k == 1 { gamma.name(g).to_string() } else { format!("{}^{k}", gamma.name(g)) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Multiplication and normalisation in one group.
#[derive(Clone, Debug)]
pub struct Group {
    pub gamma: DefiningGraph,
    pub kind: GroupKind,
}

impl Group {
    pub fn new(gamma: DefiningGraph, kind: GroupKind) -> Self {
        Self { gamma, kind }
    }

    pub fn commute(&self, a: Letter, b: Letter) -> bool {
        self.gamma.commute(a.gen, b.gen)
    }

    /// Appends one letter to a reduced word, cancelling against the last
    /// occurrence of its generator when only commuting letters intervene.
    fn push_reduced(&self, word: &mut Vec<Letter>, l: Letter) {
        for i in (0..word.len()).rev() {
            let x = word[i];
            if x.gen == l.gen {
                if x == l.inv(self.kind) {
                    word.remove(i);
                    return;
                }
                break;
            }
            if !self.gamma.commute(x.gen, l.gen) {
                break;
            }
        }
        word.push(l);
    }

    /// Lexicographically least commutation-equivalent word.
    fn lex_min(&self, mut word: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len());
        while !word.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..word.len() {
                let movable = word[..i].iter().all(|&x| self.gamma.commute(x.gen, word[i].gen));
                if movable && best.is_none_or(|b| word[i] < word[b]) {
                    best = Some(i);
                }
            }
            out.push(word.remove(best.expect("first letter is always movable")));
        }
        out
    }

    pub fn normal_form(&self, letters: &[Letter]) -> NormalForm {
        let mut word = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push_reduced(&mut word, l);
        }
        NormalForm { letters: self.lex_min(word) }
    }

    pub fn mul(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut word = a.letters.clone();
        for &l in &b.letters {
            self.push_reduced(&mut word, l);
        }
        NormalForm { letters: self.lex_min(word) }
    }

    pub fn mul_letter(&self, a: &NormalForm, l: Letter) -> NormalForm {
        let mut word = a.letters.clone();
        self.push_reduced(&mut word, l);
        NormalForm { letters: self.lex_min(word) }
    }

    pub fn letter_mul(&self, l: Letter, a: &NormalForm) -> NormalForm {
        let mut word = vec![l];
        word.extend_from_slice(&a.letters);
        self.normal_form(&word)
    }

    pub fn inverse(&self, a: &NormalForm) -> NormalForm {
        let rev: Vec<Letter> = a.letters.iter().rev().map(|l| l.inv(self.kind)).collect();
        self.normal_form(&rev)
    }

    pub fn generator_element(&self, g: Generator) -> NormalForm {
        NormalForm { letters: vec![Letter::new(g, false)] }
    }

    /// Applies a letter substitution `l ↦ f(l)` and renormalises.
    pub fn substitute(&self, a: &NormalForm, f: impl Fn(Letter) -> Letter) -> NormalForm {
        let w: Vec<Letter> = a.letters.iter().map(|&l| f(l)).collect();
        self.normal_form(&w)
    }

    /// Parses words such as `a b^-1 c^2`, `abab`, `x x⁻¹`, or `1`.
    pub fn parse(&self, text: &str) -> Result<NormalForm, RaError> {
        Ok(self.normal_form(&self.parse_letters(text)?))
    }

    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>, RaError> {
        let mut names: Vec<&str> = self.gamma.names().iter().map(String::as_str).collect();
        names.sort_by_key(|n| std::cmp::Reverse(n.len()));
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" || token == "ε" {
                continue;
            }
            let mut rest = token;
            while !rest.is_empty() {
                let name = names.iter().find(|n| rest.starts_with(**n)).ok_or_else(|| RaError::UnknownGenerator(rest.to_string()))?;
                let g = self.gamma.generator(name)?;
                rest = &rest[name.len()..];
                let mut exponent: i64 = 1;
                if let Some(r) = rest.strip_prefix("⁻¹") {
                    exponent = -1;
                    rest = r;
                } else if let Some(r) = rest.strip_prefix('^') {
                    let end = r.char_indices().find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-'))).map_or(r.len(), |(i, _)| i);
                    exponent = r[..end].parse().map_err(|_| RaError::UnknownGenerator(token.to_string()))?;
                    rest = &r[end..];
                }
                let l = Letter::new(g, false);
                for _ in 0..exponent.unsigned_abs() {
                    out.push(if exponent < 0 { l.inv(self.kind) } else { l });
                }
            }
        }
        Ok(out)
    }

    /// Whether `l` can be moved to the front (resp. back) of `a` and then
    /// cancelled, i.e. `|l·a| < |a|` (resp. `|a·l| < |a|`).
    pub fn is_left_descent(&self, a: &NormalForm, l: Letter) -> bool {
        self.letter_mul(l, a).len() < a.len()
    }

    pub fn is_right_descent(&self, a: &NormalForm, l: Letter) -> bool {
        self.mul_letter(a, l).len() < a.len()
    }

    fn letters_in(&self, set: &FixedBitSet) -> Vec<Letter> {
        set.ones()
            .flat_map(|g| {
                let l = Letter::new(g, false);
                if self.kind == GroupKind::Artin {
                    vec![l, l.inv(self.kind)]
                } else {
                    vec![l]
                }
            })
            .collect()
    }

    /// Shortest element of the left coset `a·⟨S⟩`.
    pub fn min_left_coset_rep(&self, a: &NormalForm, s: &FixedBitSet) -> NormalForm {
        let letters = self.letters_in(s);
        let mut cur = a.clone();
        'outer: loop {
            for &l in &letters {
                let next = self.mul_letter(&cur, l);
                if next.len() < cur.len() {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Shortest element of the double coset `⟨S⟩·a·⟨T⟩`.
    pub fn min_double_coset_rep(&self, a: &NormalForm, s: &FixedBitSet, t: &FixedBitSet) -> NormalForm {
        let (ls, lt) = (self.letters_in(s), self.letters_in(t));
        let mut cur = a.clone();
        'outer: loop {
            for &l in &ls {
                let next = self.letter_mul(l, &cur);
                if next.len() < cur.len() {
                    cur = next;
                    continue 'outer;
                }
            }
            for &l in &lt {
                let next = self.mul_letter(&cur, l);
                if next.len() < cur.len() {
                    cur = next;
                    continue 'outer;
                }
            }
            return cur;
        }
    }
}
