//! Directed bipartite language graph.
//!
//! Vertices are languages split into a high-resource (HRL) side and a
//! low-resource (LRL) side. Every HRL has one directed edge to every LRL,
//! weighted by vocabulary overlap: the size of the intersection of the two
//! languages' top-k token sets, divided by k. Edges never connect languages
//! on the same side.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

/// Which side of the bipartite graph a language sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Hrl,
    Lrl,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Hrl => "hrl",
            Side::Lrl => "lrl",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A language (task) identifier: a short code plus the graph side it lives on.
///
/// Codes are unique within a graph, so the derived ordering (code first)
/// is total for any one run and drives every deterministic iteration order
/// in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanguageId {
    code: String,
    side: Side,
}

impl LanguageId {
    pub fn new(code: impl Into<String>, side: Side) -> Self {
        LanguageId {
            code: code.into(),
            side,
        }
    }

    pub fn hrl(code: impl Into<String>) -> Self {
        Self::new(code, Side::Hrl)
    }

    pub fn lrl(code: impl Into<String>) -> Self {
        Self::new(code, Side::Lrl)
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_hrl(&self) -> bool {
        self.side == Side::Hrl
    }

    pub fn is_lrl(&self) -> bool {
        self.side == Side::Lrl
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// The top-k most frequent tokens of one language's training corpus.
///
/// Entries are sorted by count descending; equal counts break ties by
/// lexicographic token order so the profile is a pure function of the
/// token multiset.
#[derive(Debug, Clone)]
pub struct VocabProfile {
    language: LanguageId,
    entries: Vec<(String, u64)>,
    k: usize,
}

impl VocabProfile {
    /// Count token frequencies and keep the k most frequent tokens.
    pub fn extract<I, S>(tokens: I, language: LanguageId, k: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let mut counts: HashMap<String, u64> = HashMap::new();
        for token in tokens {
            *counts.entry(token.into()).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries.truncate(k);
        Ok(VocabProfile {
            language,
            entries,
            k,
        })
    }

    /// Extract a profile from corpus text: one sentence per line, tokens
    /// separated by whitespace.
    pub fn from_corpus_reader<R: BufRead>(
        reader: R,
        language: LanguageId,
        k: usize,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let mut counts: HashMap<String, u64> = HashMap::new();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::io(format!("<corpus {}>", language), e))?;
            for token in line.split_whitespace() {
                *counts.entry(token.to_string()).or_insert(0) += 1;
            }
        }
        if counts.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries.truncate(k);
        Ok(VocabProfile {
            language,
            entries,
            k,
        })
    }

    pub fn from_corpus_path(path: &Path, language: LanguageId, k: usize) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_corpus_reader(std::io::BufReader::new(file), language, k)
    }

    pub fn language(&self) -> &LanguageId {
        &self.language
    }

    /// (token, count) pairs, count-descending with lexicographic tie-break.
    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn token_set(&self) -> HashSet<&str> {
        self.entries.iter().map(|(t, _)| t.as_str()).collect()
    }

    /// Vocabulary overlap between two profiles: |top-k(i) ∩ top-k(j)| / k.
    ///
    /// The divisor is always k, even when a profile has fewer than k
    /// distinct tokens, so the result is an integer multiple of 1/k.
    pub fn similarity(&self, other: &VocabProfile) -> Result<f64> {
        if self.k != other.k {
            return Err(Error::ProfileSizeMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mine = self.token_set();
        let overlap = other
            .entries
            .iter()
            .filter(|(t, _)| mine.contains(t.as_str()))
            .count();
        Ok(overlap as f64 / self.k as f64)
    }
}

/// The directed bipartite language graph: HRL and LRL vertex sets plus a
/// total edge map HRL × LRL → similarity weight in [0, 1].
#[derive(Debug, Clone)]
pub struct BipartiteLangGraph {
    hrls: BTreeSet<LanguageId>,
    lrls: BTreeSet<LanguageId>,
    edges: BTreeMap<(String, String), f64>,
}

impl BipartiteLangGraph {
    /// Assemble and validate a graph from explicit parts. The edge map must
    /// be total over hrls × lrls with weights in [0, 1].
    pub fn new(
        hrls: BTreeSet<LanguageId>,
        lrls: BTreeSet<LanguageId>,
        edges: BTreeMap<(String, String), f64>,
    ) -> Result<Self> {
        if hrls.is_empty() || lrls.is_empty() {
            return Err(Error::InvalidConfig(
                "graph needs at least one HRL and one LRL".into(),
            ));
        }
        for lang in &hrls {
            if lang.side() != Side::Hrl {
                return Err(Error::InvalidConfig(format!(
                    "{} placed in the HRL set but tagged {}",
                    lang,
                    lang.side()
                )));
            }
        }
        for lang in &lrls {
            if lang.side() != Side::Lrl {
                return Err(Error::InvalidConfig(format!(
                    "{} placed in the LRL set but tagged {}",
                    lang,
                    lang.side()
                )));
            }
        }
        let hrl_codes: BTreeSet<&str> = hrls.iter().map(|l| l.code()).collect();
        let lrl_codes: BTreeSet<&str> = lrls.iter().map(|l| l.code()).collect();
        if hrl_codes.len() != hrls.len() || lrl_codes.len() != lrls.len() {
            return Err(Error::InvalidConfig("duplicate language code".into()));
        }
        if let Some(code) = hrl_codes.intersection(&lrl_codes).next() {
            return Err(Error::LanguageOnBothSides(code.to_string()));
        }
        for ((h, l), w) in &edges {
            if !hrl_codes.contains(h.as_str()) {
                return Err(Error::UnknownLanguage(h.clone()));
            }
            if !lrl_codes.contains(l.as_str()) {
                return Err(Error::UnknownLanguage(l.clone()));
            }
            if !w.is_finite() || *w < 0.0 || *w > 1.0 {
                return Err(Error::InvalidWeight {
                    language: format!("{h}->{l}"),
                    value: *w,
                });
            }
        }
        for h in &hrl_codes {
            for l in &lrl_codes {
                if !edges.contains_key(&(h.to_string(), l.to_string())) {
                    return Err(Error::InvalidConfig(format!(
                        "edge map not total: missing {h}->{l}"
                    )));
                }
            }
        }
        Ok(BipartiteLangGraph { hrls, lrls, edges })
    }

    /// Build the graph from vocabulary profiles: one edge per HRL × LRL pair,
    /// weighted by profile similarity.
    pub fn build(
        hrls: &BTreeSet<LanguageId>,
        lrls: &BTreeSet<LanguageId>,
        profiles: &BTreeMap<LanguageId, VocabProfile>,
    ) -> Result<Self> {
        if hrls.is_empty() || lrls.is_empty() {
            return Err(Error::InvalidConfig(
                "graph needs at least one HRL and one LRL".into(),
            ));
        }
        let mut edges = BTreeMap::new();
        for hrl in hrls {
            let hp = profiles
                .get(hrl)
                .ok_or_else(|| Error::MissingProfile(hrl.code().to_string()))?;
            for lrl in lrls {
                let lp = profiles
                    .get(lrl)
                    .ok_or_else(|| Error::MissingProfile(lrl.code().to_string()))?;
                let w = hp.similarity(lp)?;
                edges.insert((hrl.code().to_string(), lrl.code().to_string()), w);
            }
        }
        Self::new(hrls.clone(), lrls.clone(), edges)
    }

    pub fn hrls(&self) -> &BTreeSet<LanguageId> {
        &self.hrls
    }

    pub fn lrls(&self) -> &BTreeSet<LanguageId> {
        &self.lrls
    }

    /// All vertices, HRLs and LRLs, in code order.
    pub fn languages(&self) -> impl Iterator<Item = &LanguageId> {
        let mut all: Vec<&LanguageId> = self.hrls.iter().chain(self.lrls.iter()).collect();
        all.sort();
        all.into_iter()
    }

    pub fn language(&self, code: &str) -> Option<&LanguageId> {
        self.hrls
            .iter()
            .chain(self.lrls.iter())
            .find(|l| l.code() == code)
    }

    pub fn contains(&self, lang: &LanguageId) -> bool {
        self.hrls.contains(lang) || self.lrls.contains(lang)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Similarity weight of the directed edge hrl → lrl.
    pub fn weight(&self, hrl_code: &str, lrl_code: &str) -> Result<f64> {
        self.edges
            .get(&(hrl_code.to_string(), lrl_code.to_string()))
            .copied()
            .ok_or_else(|| Error::UnknownLanguage(format!("{hrl_code}->{lrl_code}")))
    }

    /// All edges into one LRL, sorted by HRL code: (hrl, weight).
    pub fn edges_into(&self, lrl_code: &str) -> Result<Vec<(&LanguageId, f64)>> {
        if !self.lrls.iter().any(|l| l.code() == lrl_code) {
            return Err(Error::UnknownLanguage(lrl_code.to_string()));
        }
        let mut out = Vec::with_capacity(self.hrls.len());
        for hrl in &self.hrls {
            let w = self.weight(hrl.code(), lrl_code)?;
            out.push((hrl, w));
        }
        Ok(out)
    }

    /// Parse the graph fixture format: `hrls = ...` / `lrls = ...` headers
    /// followed by one `hrl, lrl, weight` record per edge. `#` starts a
    /// comment.
    pub fn from_fixture_str(text: &str, origin: &str) -> Result<Self> {
        let mut hrl_codes: Option<Vec<String>> = None;
        let mut lrl_codes: Option<Vec<String>> = None;
        let mut edges: BTreeMap<(String, String), f64> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(eq) = line.find('=') {
                let key = line[..eq].trim();
                let value = line[eq + 1..].trim();
                let codes: Vec<String> = value
                    .split(',')
                    .map(|c| c.trim().to_string())
                    .filter(|c| !c.is_empty())
                    .collect();
                match key {
                    "hrls" => {
                        if hrl_codes.replace(codes).is_some() {
                            return Err(Error::parse(origin, lineno, "duplicate hrls header"));
                        }
                    }
                    "lrls" => {
                        if lrl_codes.replace(codes).is_some() {
                            return Err(Error::parse(origin, lineno, "duplicate lrls header"));
                        }
                    }
                    other => {
                        return Err(Error::parse(origin, lineno, format!("unknown key {other}")));
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("expected `hrl, lrl, weight`, got {} fields", fields.len()),
                ));
            }
            if hrl_codes.is_none() || lrl_codes.is_none() {
                return Err(Error::parse(
                    origin,
                    lineno,
                    "edge record before hrls/lrls headers",
                ));
            }
            let weight: f64 = fields[2].parse().map_err(|_| {
                Error::parse(origin, lineno, format!("bad weight {:?}", fields[2]))
            })?;
            if !weight.is_finite() || !(0.0..=1.0).contains(&weight) {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("weight {weight} outside [0, 1]"),
                ));
            }
            let key = (fields[0].to_string(), fields[1].to_string());
            if edges.insert(key, weight).is_some() {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("duplicate edge {} -> {}", fields[0], fields[1]),
                ));
            }
        }

        let hrls: BTreeSet<LanguageId> = hrl_codes
            .ok_or_else(|| Error::parse(origin, 0, "missing hrls header"))?
            .into_iter()
            .map(LanguageId::hrl)
            .collect();
        let lrls: BTreeSet<LanguageId> = lrl_codes
            .ok_or_else(|| Error::parse(origin, 0, "missing lrls header"))?
            .into_iter()
            .map(LanguageId::lrl)
            .collect();
        Self::new(hrls, lrls, edges)
    }

    /// Load a graph fixture file from disk.
    pub fn load_fixture(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_fixture_str(&text, &path.display().to_string())
    }

    /// Serialize to the fixture format, sorted for stable output.
    pub fn to_fixture_string(&self) -> String {
        let mut out = String::new();
        let join = |set: &BTreeSet<LanguageId>| {
            set.iter()
                .map(|l| l.code().to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!("hrls = {}\n", join(&self.hrls)));
        out.push_str(&format!("lrls = {}\n", join(&self.lrls)));
        for ((h, l), w) in &self.edges {
            out.push_str(&format!("{h}, {l}, {w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(tokens: &[&str], code: &str, side: Side, k: usize) -> VocabProfile {
        VocabProfile::extract(tokens.iter().copied(), LanguageId::new(code, side), k).unwrap()
    }

    #[test]
    fn extract_counts_and_truncates() {
        let p = profile(&["a", "b", "a", "c", "a", "b"], "x", Side::Hrl, 2);
        assert_eq!(p.entries(), &[("a".into(), 3), ("b".into(), 2)]);
    }

    #[test]
    fn extract_shorter_than_k() {
        let p = profile(&["x"], "x", Side::Hrl, 5);
        assert_eq!(p.entries(), &[("x".into(), 1)]);
    }

    #[test]
    fn extract_breaks_ties_lexicographically() {
        let p = profile(&["b", "a", "b", "a"], "x", Side::Hrl, 2);
        assert_eq!(p.entries(), &[("a".into(), 2), ("b".into(), 2)]);
    }

    #[test]
    fn extract_rejects_empty_stream() {
        let err = VocabProfile::extract(Vec::<String>::new(), LanguageId::hrl("x"), 3);
        assert!(matches!(err, Err(Error::EmptyCorpus)));
    }

    #[test]
    fn extract_rejects_zero_k() {
        let err = VocabProfile::extract(["a"], LanguageId::hrl("x"), 0);
        assert!(matches!(err, Err(Error::InvalidK)));
    }

    #[test]
    fn similarity_identical_profiles() {
        let tokens: Vec<String> = (0..8).map(|i| format!("t{i}")).collect();
        let a = VocabProfile::extract(tokens.clone(), LanguageId::hrl("a"), 8).unwrap();
        let b = VocabProfile::extract(tokens, LanguageId::lrl("b"), 8).unwrap();
        assert_eq!(a.similarity(&b).unwrap(), 1.0);
    }

    #[test]
    fn similarity_disjoint_profiles() {
        let a = VocabProfile::extract((0..8).map(|i| format!("a{i}")), LanguageId::hrl("a"), 8)
            .unwrap();
        let b = VocabProfile::extract((0..8).map(|i| format!("b{i}")), LanguageId::lrl("b"), 8)
            .unwrap();
        assert_eq!(a.similarity(&b).unwrap(), 0.0);
    }

    #[test]
    fn similarity_half_overlap() {
        let a = profile(&["p", "q", "r", "s"], "a", Side::Hrl, 4);
        let b = profile(&["p", "q", "x", "y"], "b", Side::Lrl, 4);
        assert_eq!(a.similarity(&b).unwrap(), 0.5);
    }

    #[test]
    fn similarity_rejects_mismatched_k() {
        let a = profile(&["p"], "a", Side::Hrl, 4);
        let b = profile(&["p"], "b", Side::Lrl, 5);
        assert!(matches!(
            a.similarity(&b),
            Err(Error::ProfileSizeMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn build_single_pair_identical_profiles() {
        let hrls: BTreeSet<_> = [LanguageId::hrl("h")].into();
        let lrls: BTreeSet<_> = [LanguageId::lrl("l")].into();
        let mut profiles = BTreeMap::new();
        profiles.insert(
            LanguageId::hrl("h"),
            profile(&["p", "q"], "h", Side::Hrl, 2),
        );
        profiles.insert(
            LanguageId::lrl("l"),
            profile(&["p", "q"], "l", Side::Lrl, 2),
        );
        let g = BipartiteLangGraph::build(&hrls, &lrls, &profiles).unwrap();
        assert_eq!(g.weight("h", "l").unwrap(), 1.0);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_is_total_over_cross_product() {
        let hrls: BTreeSet<_> = (0..4).map(|i| LanguageId::hrl(format!("h{i}"))).collect();
        let lrls: BTreeSet<_> = (0..4).map(|i| LanguageId::lrl(format!("l{i}"))).collect();
        let mut profiles = BTreeMap::new();
        for lang in hrls.iter().chain(lrls.iter()) {
            profiles.insert(
                lang.clone(),
                VocabProfile::extract(["t"], lang.clone(), 2).unwrap(),
            );
        }
        let g = BipartiteLangGraph::build(&hrls, &lrls, &profiles).unwrap();
        assert_eq!(g.edge_count(), 16);
    }

    #[test]
    fn build_rejects_missing_profile() {
        let hrls: BTreeSet<_> = [LanguageId::hrl("h")].into();
        let lrls: BTreeSet<_> = [LanguageId::lrl("l")].into();
        let mut profiles = BTreeMap::new();
        profiles.insert(
            LanguageId::hrl("h"),
            profile(&["p"], "h", Side::Hrl, 2),
        );
        match BipartiteLangGraph::build(&hrls, &lrls, &profiles) {
            Err(Error::MissingProfile(code)) => assert_eq!(code, "l"),
            other => panic!("expected missing profile, got {other:?}"),
        }
    }

    #[test]
    fn new_rejects_language_on_both_sides() {
        let hrls: BTreeSet<_> = [LanguageId::hrl("x")].into();
        let lrls: BTreeSet<_> = [LanguageId::lrl("x")].into();
        let mut edges = BTreeMap::new();
        edges.insert(("x".to_string(), "x".to_string()), 0.5);
        match BipartiteLangGraph::new(hrls, lrls, edges) {
            Err(Error::LanguageOnBothSides(code)) => assert_eq!(code, "x"),
            other => panic!("expected both-sides error, got {other:?}"),
        }
    }

    #[test]
    fn fixture_roundtrip() {
        let text = "hrls = h1, h2\nlrls = l1\nh1, l1, 0.25\nh2, l1, 0.75\n";
        let g = BipartiteLangGraph::from_fixture_str(text, "<test>").unwrap();
        assert_eq!(g.weight("h1", "l1").unwrap(), 0.25);
        let again =
            BipartiteLangGraph::from_fixture_str(&g.to_fixture_string(), "<again>").unwrap();
        assert_eq!(again.weight("h2", "l1").unwrap(), 0.75);
    }

    #[test]
    fn fixture_rejects_out_of_range_weight() {
        let text = "hrls = h\nlrls = l\nh, l, 1.2\n";
        let err = BipartiteLangGraph::from_fixture_str(text, "<test>").unwrap_err();
        assert!(err.to_string().contains("outside [0, 1]"), "{err}");
    }

    #[test]
    fn fixture_rejects_non_total_edge_map() {
        let text = "hrls = h1, h2\nlrls = l\nh1, l, 0.5\n";
        let err = BipartiteLangGraph::from_fixture_str(text, "<test>").unwrap_err();
        assert!(err.to_string().contains("not total"), "{err}");
    }

    proptest! {
        #[test]
        fn similarity_is_symmetric(
            left in prop::collection::vec("[a-e]{1,2}", 1..30),
            right in prop::collection::vec("[a-e]{1,2}", 1..30),
            k in 1usize..8,
        ) {
            let a = VocabProfile::extract(left, LanguageId::hrl("a"), k).unwrap();
            let b = VocabProfile::extract(right, LanguageId::lrl("b"), k).unwrap();
            prop_assert_eq!(a.similarity(&b).unwrap(), b.similarity(&a).unwrap());
        }

        #[test]
        fn similarity_is_a_multiple_of_one_over_k(
            left in prop::collection::vec("[a-e]{1,2}", 1..30),
            right in prop::collection::vec("[a-e]{1,2}", 1..30),
            k in 1usize..8,
        ) {
            let a = VocabProfile::extract(left, LanguageId::hrl("a"), k).unwrap();
            let b = VocabProfile::extract(right, LanguageId::lrl("b"), k).unwrap();
            let sim = a.similarity(&b).unwrap();
            let overlap = (sim * k as f64).round();
            prop_assert_eq!(sim, overlap / k as f64);
            prop_assert!((0.0..=1.0).contains(&sim));
        }

        #[test]
        fn similarity_to_self_is_one_when_full(
            tokens in prop::collection::vec("[a-z]{1,3}", 8..40),
        ) {
            let p = VocabProfile::extract(tokens, LanguageId::hrl("a"), 4).unwrap();
            if p.entries().len() >= 4 {
                prop_assert_eq!(p.similarity(&p).unwrap(), 1.0);
            }
        }

        #[test]
        fn extract_is_order_independent(
            tokens in prop::collection::vec("[a-d]{1,2}", 1..40),
            k in 1usize..6,
            swap in prop::collection::vec((0usize..40, 0usize..40), 0..10),
        ) {
            let mut shuffled = tokens.clone();
            for (i, j) in swap {
                let (i, j) = (i % shuffled.len(), j % shuffled.len());
                shuffled.swap(i, j);
            }
            let a = VocabProfile::extract(tokens, LanguageId::hrl("a"), k).unwrap();
            let b = VocabProfile::extract(shuffled, LanguageId::hrl("a"), k).unwrap();
            prop_assert_eq!(a.entries(), b.entries());
        }
    }
}
