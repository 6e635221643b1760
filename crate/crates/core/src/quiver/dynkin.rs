use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IceQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinFamily {
    A,
    D,
    E,
}

/// Simply-laced Dynkin type: `A_n` (n >= 1), `D_n` (n >= 4), `E_6`, `E_7`, `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DynkinType {
    family: DynkinFamily,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: DynkinFamily, rank: usize) -> Option<Self> {
        let ok = match family {
            DynkinFamily::A => rank >= 1,
            DynkinFamily::D => rank >= 4,
            DynkinFamily::E => (6..=8).contains(&rank),
        };
        ok.then_some(DynkinType { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(DynkinFamily::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(DynkinFamily::D, rank).expect("D_n needs n >= 4")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(DynkinFamily::E, rank).expect("E_n needs 6 <= n <= 8")
    }

    pub fn family(&self) -> DynkinFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let family = match s.chars().next() {
            Some('A' | 'a') => DynkinFamily::A,
            Some('D' | 'd') => DynkinFamily::D,
            Some('E' | 'e') => DynkinFamily::E,
            _ => return Err(format!("unknown Dynkin type {s:?}")),
        };
        let rank: usize = s[1..].trim_start_matches('_').parse().map_err(|_| format!("bad rank in {s:?}"))?;
        DynkinType::new(family, rank).ok_or_else(|| format!("{s} is not a valid Dynkin type"))
    }
}

impl TryFrom<String> for DynkinType {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<DynkinType> for String {
    fn from(t: DynkinType) -> String {
        t.to_string()
    }
}

/// The Dynkin type of the underlying graph, for any orientation.
///
/// Returns `None` for quivers with frozen vertices, multiple arrows, or an
/// underlying graph that is not a connected simply-laced Dynkin diagram.
pub fn is_dynkin(q: &IceQuiver) -> Option<DynkinType> {
    let n = q.m();
    if !q.is_good() || n == 0 || !q.is_connected() {
        return None;
    }
    if q.matrix().iter().any(|&v| v.abs() > 1) {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| q.b(i, j) != 0).collect()).collect();
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if edges != n - 1 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::a(n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&start| arm_length(&adj, *c, start)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => DynkinType::new(DynkinFamily::D, n),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => DynkinType::new(DynkinFamily::E, n),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Length of the path starting at `start` and leading away from `center`, or
/// `usize::MAX` if the arm branches.
fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [] => return len,
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return usize::MAX,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, spec: &str) -> IceQuiver {
        IceQuiver::parse_arrows(n, n, spec).unwrap()
    }

    #[test]
    fn recognizes_types() {
        assert_eq!(is_dynkin(&arrows(3, "1>2,2>3")), Some(DynkinType::a(3)));
        assert_eq!(is_dynkin(&arrows(3, "1>2,2>3,3>1")), None);
        assert_eq!(is_dynkin(&arrows(2, "2*1>2")), None);
        assert_eq!(is_dynkin(&arrows(4, "1>2,3>2,2>4")), Some(DynkinType::d(4)));
        assert_eq!(is_dynkin(&arrows(5, "1>2,2>3,3>4,5>3")), Some(DynkinType::d(5)));
        assert_eq!(is_dynkin(&arrows(6, "1>3,3>4,4>5,5>6,2>4")), Some(DynkinType::e(6)));
        assert_eq!(is_dynkin(&arrows(8, "1>3,3>4,4>5,5>6,6>7,7>8,2>4")), Some(DynkinType::e(8)));
        // affine D4 star
        assert_eq!(is_dynkin(&arrows(5, "1>2,1>3,1>4,1>5")), None);
        assert_eq!(is_dynkin(&IceQuiver::empty(1)), Some(DynkinType::a(1)));
        assert_eq!(is_dynkin(&IceQuiver::empty(2)), None);
    }

    #[test]
    fn parses_type_names() {
        assert_eq!("A3".parse::<DynkinType>().unwrap(), DynkinType::a(3));
        assert_eq!("e8".parse::<DynkinType>().unwrap(), DynkinType::e(8));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("B2".parse::<DynkinType>().is_err());
    }
}
