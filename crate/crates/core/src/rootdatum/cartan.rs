use std::fmt;

use serde::{Deserialize, Serialize};

/// Finite Cartan type with Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: char, rank: usize) -> Option<Self> {
        let ok = match letter {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        ok.then_some(CartanType { letter, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// `a_ij = <alpha_i^vee, alpha_j>`.
pub fn cartan_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.letter {
        'A' | 'B' | 'C' => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1)),
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        'F' => (0..3).for_each(|i| link(i, i + 1)),
        'G' => link(0, 1),
        _ => unreachable!("validated by CartanType::new"),
    }
    match t.letter {
        'B' => a[n - 1][n - 2] = -2,
        'C' => a[n - 2][n - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(cartan_matrix(CartanType::new('G', 2).unwrap()), vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(cartan_matrix(CartanType::new('B', 2).unwrap()), vec![vec![2, -1], vec![-2, 2]]);
        let d4 = cartan_matrix(CartanType::new('D', 4).unwrap());
        assert_eq!(d4[1], vec![-1, 2, -1, -1]);
    }
}
