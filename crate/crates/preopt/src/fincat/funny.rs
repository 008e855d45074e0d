//! Words in the funny tensor of two categories.
//!
//! An arrow (c,d) -> (c',d') is an alternating word of one-sided letters:
//! an arrow of the left factor applied at the current right coordinate, or
//! an arrow of the right factor applied at the current left coordinate.
//! Reduction deletes identity letters and composes adjacent same-side
//! letters; equality is syntactic equality of the normal form.  There is
//! deliberately no interchange: (f,id);(id,g) and (id,g);(f,id) stay
//! distinct, which is the whole point of this tensor.

use std::sync::Arc;

use super::cat::{Arr, FinCat, Obj};
use crate::error::{Error, Result};

/// One letter: an arrow moving the left coordinate or the right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    L(Arr),
    R(Arr),
}

/// A reduced alternating word between object pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunnyWord {
    pub src: (Obj, Obj),
    pub dst: (Obj, Obj),
    pub letters: Vec<Letter>,
}

impl FunnyWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Lazy view of the funny tensor category.  Objects are pairs and arrows
/// are reduced words; hom sets are never materialized because a single
/// monoid factor already makes them infinite.
#[derive(Debug, Clone)]
pub struct FunnyTensor {
    pub left: Arc<FinCat>,
    pub right: Arc<FinCat>,
}

pub fn funny_tensor(left: &Arc<FinCat>, right: &Arc<FinCat>) -> FunnyTensor {
    FunnyTensor { left: left.clone(), right: right.clone() }
}

impl FunnyTensor {
    pub fn id(&self, o: (Obj, Obj)) -> FunnyWord {
        FunnyWord { src: o, dst: o, letters: Vec::new() }
    }

    /// The left-factor arrow f at right coordinate d.
    pub fn inl(&self, f: Arr, d: Obj) -> Result<FunnyWord> {
        if f >= self.left.arrow_count() {
            return Err(Error::mismatch(format!("no arrow {f} in {}", self.left.name())));
        }
        let s = self.left.arrow(f).src;
        self.word((s, d), vec![Letter::L(f)])
    }

    /// The right-factor arrow g at left coordinate c.
    pub fn inr(&self, c: Obj, g: Arr) -> Result<FunnyWord> {
        if g >= self.right.arrow_count() {
            return Err(Error::mismatch(format!("no arrow {g} in {}", self.right.name())));
        }
        let s = self.right.arrow(g).src;
        self.word((c, s), vec![Letter::R(g)])
    }

    /// Validates the boundary chaining of the letters, then reduces.
    pub fn word(&self, src: (Obj, Obj), letters: Vec<Letter>) -> Result<FunnyWord> {
        if src.0 >= self.left.object_count() || src.1 >= self.right.object_count() {
            return Err(Error::mismatch(format!("source pair {src:?} out of range")));
        }
        let (mut c, mut d) = src;
        for &l in &letters {
            match l {
                Letter::L(f) => {
                    if f >= self.left.arrow_count() {
                        return Err(Error::mismatch(format!(
                            "no arrow {f} in {}",
                            self.left.name()
                        )));
                    }
                    let fd = self.left.arrow(f);
                    if fd.src != c {
                        return Err(Error::mismatch(format!(
                            "letter {} expects left coordinate {}, word is at {}",
                            fd.name,
                            self.left.object_name(fd.src),
                            self.left.object_name(c)
                        )));
                    }
                    c = fd.dst;
                }
                Letter::R(g) => {
                    if g >= self.right.arrow_count() {
                        return Err(Error::mismatch(format!(
                            "no arrow {g} in {}",
                            self.right.name()
                        )));
                    }
                    let gd = self.right.arrow(g);
                    if gd.src != d {
                        return Err(Error::mismatch(format!(
                            "letter {} expects right coordinate {}, word is at {}",
                            gd.name,
                            self.right.object_name(gd.src),
                            self.right.object_name(d)
                        )));
                    }
                    d = gd.dst;
                }
            }
        }
        Ok(FunnyWord { src, dst: (c, d), letters: self.reduce(letters) })
    }

    fn is_id(&self, l: Letter) -> bool {
        match l {
            Letter::L(f) => self.left.id(self.left.arrow(f).src) == f,
            Letter::R(g) => self.right.id(self.right.arrow(g).src) == g,
        }
    }

    /// Stack reduction: identities are dropped, a letter on the same side
    /// as the top of the stack composes into it.  The stack stays strictly
    /// alternating, so one merge per incoming letter suffices.
    fn reduce(&self, letters: Vec<Letter>) -> Vec<Letter> {
        let mut st: Vec<Letter> = Vec::new();
        for l in letters {
            if self.is_id(l) {
                continue;
            }
            match (st.last().copied(), l) {
                (Some(Letter::L(a)), Letter::L(b)) => {
                    st.pop();
                    let m = Letter::L(self.left.compose(b, a));
                    if !self.is_id(m) {
                        st.push(m);
                    }
                }
                (Some(Letter::R(a)), Letter::R(b)) => {
                    st.pop();
                    let m = Letter::R(self.right.compose(b, a));
                    if !self.is_id(m) {
                        st.push(m);
                    }
                }
                _ => st.push(l),
            }
        }
        st
    }
}

/// Composition in diagrammatic order: the result runs w1 first, then w2.
pub fn funny_word_compose(t: &FunnyTensor, w1: &FunnyWord, w2: &FunnyWord) -> Result<FunnyWord> {
    if w1.dst != w2.src {
        return Err(Error::mismatch(format!(
            "word boundary mismatch: {:?} then {:?}",
            w1.dst, w2.src
        )));
    }
    let mut letters = w1.letters.clone();
    letters.extend_from_slice(&w2.letters);
    t.word(w1.src, letters)
}
