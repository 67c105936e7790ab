//! Deck transformations: `ℤⁿ` on the torus, free groups on the pairings otherwise.
//!
//! Generators are `±(k + 1)` for pairing `k`.

/// Freely reduces a word.
pub fn reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &g in word {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

pub fn inverse(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|g| -g).collect()
}

pub fn concat(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    reduce(&w)
}

pub fn power(word: &[i32], m: i64) -> Vec<i32> {
    let base = if m < 0 { inverse(word) } else { word.to_vec() };
    let mut out = Vec::new();
    for _ in 0..m.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    reduce(&out)
}

/// Cyclic reduction of a reduced word.
pub fn cyclic_reduce(word: &[i32]) -> Vec<i32> {
    let mut w = reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// Are two words conjugate in the free group?
pub fn conjugate(a: &[i32], b: &[i32]) -> bool {
    let (x, y) = (cyclic_reduce(a), cyclic_reduce(b));
    if x.len() != y.len() {
        return false;
    }
    if x.is_empty() {
        return true;
    }
    (0..x.len()).any(|r| x[r..].iter().chain(x[..r].iter()).eq(y.iter()))
}

/// Abelianization with `n` generators.
pub fn abelian(word: &[i32], n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &g in word {
        v[(g.unsigned_abs() - 1) as usize] += i64::from(g.signum());
    }
    v
}

/// Position in the cover during a walk, with cheap undo.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tile {
    Abelian(Vec<i64>),
    Free(Vec<i32>),
}

#[derive(Clone, Copy, Debug)]
pub enum Undo {
    Add(i32),
    Pop,
    Push(i32),
}

impl Tile {
    pub fn identity(abelian: bool, rank: usize) -> Tile {
        if abelian {
            Tile::Abelian(vec![0; rank])
        } else {
            Tile::Free(Vec::new())
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Tile::Abelian(v) => v.iter().all(|&x| x == 0),
            Tile::Free(w) => w.is_empty(),
        }
    }

    pub fn apply(&mut self, g: i32) -> Undo {
        match self {
            Tile::Abelian(v) => {
                v[(g.unsigned_abs() - 1) as usize] += i64::from(g.signum());
                Undo::Add(g)
            }
            Tile::Free(w) => {
                if w.last() == Some(&-g) {
                    w.pop();
                    Undo::Push(-g)
                } else {
                    w.push(g);
                    Undo::Pop
                }
            }
        }
    }

    pub fn undo(&mut self, u: Undo) {
        match (self, u) {
            (Tile::Abelian(v), Undo::Add(g)) => v[(g.unsigned_abs() - 1) as usize] -= i64::from(g.signum()),
            (Tile::Free(w), Undo::Pop) => {
                w.pop();
            }
            (Tile::Free(w), Undo::Push(g)) => w.push(g),
            _ => unreachable!("undo does not match tile kind"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_and_conjugacy() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert!(conjugate(&[1, 2, -1], &[2]));
        assert!(conjugate(&[1, 2, 3], &[3, 1, 2]));
        assert!(!conjugate(&[1, 2], &[2, 2]));
        assert_eq!(power(&[1, 2], -2), vec![-2, -1, -2, -1]);
    }

    #[test]
    fn tile_undo_restores() {
        let mut t = Tile::identity(false, 2);
        let u1 = t.apply(1);
        let u2 = t.apply(-1);
        assert!(t.is_identity());
        t.undo(u2);
        assert_eq!(t, Tile::Free(vec![1]));
        t.undo(u1);
        assert!(t.is_identity());
    }
}
