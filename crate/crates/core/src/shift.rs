//! Shifts over a lower-complete symbol order.
//!
//! The alphabet `S` carries the topology with base sets `{v : v ≤ u}`, so the
//! cylinder `C(w)` over a window is the set of sequences lying pointwise below
//! `w` there. Every finite block occurs inside some sequence, so a family of
//! same-window cylinders covers the full shift exactly when every word is
//! pointwise below one of them; all reasoning stays at the level of words.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{bits_iter, Poset};
use crate::setcover::{min_set_cover, BitSet, SearchStats};

/// Largest number of words any single enumeration may touch.
pub const DEFAULT_WORD_BUDGET: u64 = 4096;

/// Alphabets up to this size are checked for lower completeness over every
/// subset; larger ones through pairwise meets.
const EXHAUSTIVE_LIMIT: usize = 12;

/// Finite ordered alphabet in which every nonempty set with a common lower
/// bound has a greatest lower bound.
#[derive(Clone, Debug)]
pub struct SymbolPoset {
    order: Poset,
    glb: Vec<Vec<Option<usize>>>,
    top: Option<usize>,
}

/// Greatest element of the mask, if it has one.
fn greatest(order: &Poset, mask: u64) -> Option<usize> {
    bits_iter(mask).find(|&g| mask & !order.down_mask(g) == 0)
}

impl SymbolPoset {
    pub fn new<S: AsRef<str>>(symbols: &[S], pairs: &[(S, S)]) -> Result<Self> {
        Self::from_order(Poset::new(symbols, pairs)?)
    }

    pub fn from_order(order: Poset) -> Result<Self> {
        let k = order.len();
        let lower_bounds =
            |mask: u64| bits_iter(mask).fold(order.full(), |acc, s| acc & order.down_mask(s));
        let fail = |mask: u64| Error::NotLowerComplete {
            witness: {
                let mut w: Vec<String> = bits_iter(mask)
                    .map(|s| order.label(s).to_string())
                    .collect();
                w.sort();
                w
            },
        };
        if k <= EXHAUSTIVE_LIMIT {
            let mut subsets: Vec<u64> = (1u64..1 << k).collect();
            subsets.sort_by_key(|m| (m.count_ones(), *m));
            for mask in subsets {
                let lb = lower_bounds(mask);
                if lb != 0 && greatest(&order, lb).is_none() {
                    return Err(fail(mask));
                }
            }
        }
        let mut glb = vec![vec![None; k]; k];
        for a in 0..k {
            for b in 0..k {
                let pair = 1 << a | 1 << b;
                let lb = lower_bounds(pair);
                if lb == 0 {
                    continue;
                }
                match greatest(&order, lb) {
                    Some(g) => glb[a][b] = Some(g),
                    None => return Err(fail(pair)),
                }
            }
        }
        let top = greatest(&order, order.full());
        Ok(SymbolPoset { order, glb, top })
    }

    /// The identity order on the given symbols.
    pub fn discrete<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        Self::from_order(Poset::antichain(symbols)?)
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        self.glb[a][b]
    }

    /// Greatest symbol, if the alphabet has one.
    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn symbol(&self, label: &str) -> Result<usize> {
        self.order.index_of(label)
    }

    pub fn word_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Word> {
        labels
            .iter()
            .map(|l| self.symbol(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn word_labels(&self, w: &Word) -> Vec<String> {
        w.0.iter()
            .map(|&s| self.order.label(s).to_string())
            .collect()
    }
}

/// Maximal symbols `S₊`, in symbol order.
pub fn maximal_symbols(s: &SymbolPoset) -> Vec<usize> {
    s.order.maximal_points()
}

/// A finite block of symbol indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn same_len(x: &Word, w: &Word) -> Result<()> {
    if x.len() == w.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch(x.len(), w.len()))
    }
}

/// Pointwise order, i.e. `C(x) ⊆ C(w)` for cylinders over one window.
pub fn word_leq(s: &SymbolPoset, x: &Word, w: &Word) -> Result<bool> {
    same_len(x, w)?;
    Ok(x.0.iter().zip(&w.0).all(|(&a, &b)| s.leq(a, b)))
}

/// Pointwise greatest lower bound; `None` when some coordinate pair has no
/// common lower bound and the cylinders are disjoint.
pub fn word_glb(s: &SymbolPoset, x: &Word, w: &Word) -> Result<Option<Word>> {
    same_len(x, w)?;
    Ok(x.0
        .iter()
        .zip(&w.0)
        .map(|(&a, &b)| s.glb(a, b))
        .collect::<Option<Vec<_>>>()
        .map(Word))
}

/// Cylinders over the window `start .. start + len` of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCover {
    pub start: i64,
    pub len: usize,
    pub words: Vec<Word>,
}

impl CylinderCover {
    pub fn new(start: i64, len: usize, words: Vec<Word>) -> Result<Self> {
        for w in &words {
            if w.len() != len {
                return Err(Error::LengthMismatch(w.len(), len));
            }
        }
        Ok(CylinderCover { start, len, words })
    }

    /// Window as an inclusive coordinate range.
    pub fn window(&self) -> (i64, i64) {
        (self.start, self.start + self.len as i64 - 1)
    }
}

fn count_words(k: usize, n: usize) -> u128 {
    (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

fn check_budget(k: usize, n: usize, budget: u64) -> Result<()> {
    let needed = count_words(k, n);
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// All words of length `n` over `alphabet`, in lexicographic order.
fn words_over(alphabet: &[usize], n: usize) -> Vec<Word> {
    let mut out = vec![Word(Vec::with_capacity(n))];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&a| {
                    let mut v = w.0.clone();
                    v.push(a);
                    Word(v)
                })
            })
            .collect();
    }
    out
}

/// Every word of `Sⁿ`; the cover `⋀_{k=0}^{n-1} σ⁻ᵏU` of `n`-cylinders.
pub fn n_cylinder_cover(s: &SymbolPoset, n: usize, budget: u64) -> Result<CylinderCover> {
    check_budget(s.len(), n, budget)?;
    let alphabet: Vec<usize> = (0..s.len()).collect();
    CylinderCover::new(0, n, words_over(&alphabet, n))
}

/// Whether the same-window cylinders of `t` cover the shift, checked over
/// every word of `Sⁿ`.
pub fn word_subcover_covers(s: &SymbolPoset, n: usize, t: &[Word], budget: u64) -> Result<bool> {
    for w in t {
        if w.len() != n {
            return Err(Error::LengthMismatch(w.len(), n));
        }
    }
    let all = n_cylinder_cover(s, n, budget)?;
    for x in &all.words {
        let mut hit = false;
        for w in t {
            if word_leq(s, x, w)? {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact minimum subcover of the `n`-cylinder cover.
#[derive(Clone, Debug)]
pub struct WordSubcover {
    pub words: Vec<Word>,
    pub count: usize,
    pub stats: SearchStats,
}

pub fn minimal_word_subcover(s: &SymbolPoset, n: usize, budget: u64) -> Result<WordSubcover> {
    let all = n_cylinder_cover(s, n, budget)?.words;
    let k = s.len();
    let index = |w: &Word| w.0.iter().fold(0usize, |acc, &a| acc * k + a);
    let downs: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).filter(|&b| s.leq(b, a)).collect())
        .collect();
    let sets: Vec<BitSet> = all
        .iter()
        .map(|w| {
            let mut set = BitSet::new(all.len());
            let per_coord: Vec<Vec<usize>> = w.0.iter().map(|&a| downs[a].clone()).collect();
            let mut below = vec![Word(Vec::new())];
            for choices in &per_coord {
                below = below
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |&c| {
                            let mut v = p.0.clone();
                            v.push(c);
                            Word(v)
                        })
                    })
                    .collect();
            }
            for x in &below {
                set.insert(index(x));
            }
            set
        })
        .collect();
    let sol = min_set_cover(all.len(), &sets).expect("the full word set covers");
    let words: Vec<Word> = sol.chosen.iter().map(|&i| all[i].clone()).collect();
    Ok(WordSubcover {
        count: words.len(),
        words,
        stats: sol.stats,
    })
}

/// Exact shift entropy `log|S₊|` together with the verified counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftEntropyReport {
    pub entropy: f64,
    pub maximal_symbols: Vec<String>,
    /// Minimal subcover sizes of the `n`-cylinder covers, `n = 1..=n_check`.
    pub counts: Vec<usize>,
    /// `|S₊|ⁿ` for the same depths.
    pub expected: Vec<u128>,
    pub verified: bool,
    /// Optimal subcover at the deepest checked level.
    pub witness: Vec<Vec<String>>,
}

pub fn shift_entropy(s: &SymbolPoset, n_check: usize, budget: u64) -> Result<ShiftEntropyReport> {
    let plus = maximal_symbols(s);
    let mut counts = Vec::with_capacity(n_check);
    let mut expected = Vec::with_capacity(n_check);
    let mut witness = Vec::new();
    for n in 1..=n_check {
        let sub = minimal_word_subcover(s, n, budget)?;
        counts.push(sub.count);
        expected.push(count_words(plus.len(), n));
        witness = sub.words.iter().map(|w| s.word_labels(w)).collect();
    }
    witness.sort();
    let verified = counts.iter().zip(&expected).all(|(&c, &e)| c as u128 == e);
    Ok(ShiftEntropyReport {
        entropy: (plus.len() as f64).ln(),
        maximal_symbols: plus.iter().map(|&p| s.order.label(p).to_string()).collect(),
        counts,
        expected,
        verified,
        witness,
    })
}

/// `C(x) ⊆ C(w)` for cylinders over possibly different windows.
///
/// Inside both windows `x` must lie below `w`; where only `w` constrains a
/// coordinate, `w` must carry the greatest symbol.
pub fn cylinder_leq(s: &SymbolPoset, x_start: i64, x: &Word, w_start: i64, w: &Word) -> bool {
    w.0.iter().enumerate().all(|(i, &b)| {
        let k = w_start + i as i64 - x_start;
        if k >= 0 && (k as usize) < x.len() {
            s.leq(x.0[k as usize], b)
        } else {
            Some(b) == s.top()
        }
    })
}

/// `A ≺ B`: every cylinder of `a` lies inside one of `b`.
pub fn cylinder_refines(s: &SymbolPoset, a: &CylinderCover, b: &CylinderCover) -> bool {
    a.words.iter().all(|x| {
        b.words
            .iter()
            .any(|w| cylinder_leq(s, a.start, x, b.start, w))
    })
}

/// Least `N ≤ max_depth` such that the two-sided wedge of `0`-cylinders
/// over `[-N, N]` refines `v`, whose window must be `[-m, m]`.
///
/// A wedge cylinder lies below a word-maximal one, so only words over `S₊`
/// are checked. Beyond `N = m` the extra coordinates are unconstrained by
/// `v`, so the answer is decided by `N ≤ m`.
pub fn shift_expansivity_check(
    s: &SymbolPoset,
    v: &CylinderCover,
    max_depth: usize,
    budget: u64,
) -> Result<Option<usize>> {
    let (lo, hi) = v.window();
    if lo != -hi || v.len == 0 {
        return Err(Error::WindowNotSymmetric { lo, hi });
    }
    let m = hi as usize;
    let plus = maximal_symbols(s);
    for n in 0..=max_depth.min(m) {
        check_budget(plus.len(), 2 * n + 1, budget)?;
        let wedge = CylinderCover::new(-(n as i64), 2 * n + 1, words_over(&plus, 2 * n + 1))?;
        if cylinder_refines(s, &wedge, v) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The cover of all cylinders over `[-m, m]`.
pub fn symmetric_cylinder_cover(s: &SymbolPoset, m: usize, budget: u64) -> Result<CylinderCover> {
    let mut c = n_cylinder_cover(s, 2 * m + 1, budget)?;
    c.start = -(m as i64);
    Ok(c)
}
