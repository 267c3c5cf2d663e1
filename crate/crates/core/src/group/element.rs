use std::fmt;

/// A group element in one of the concrete representations.
///
/// Permutations are stored 0-based; products compose left to right (`ab` applies `a`
/// first). Matrices are row-major over `F_p`. Semidirect pairs `(v, h)` hold a kernel
/// vector and the enumeration index of a complement element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Box<[u16]>),
    Mat(Box<[u8]>),
    Pair { v: Box<[u8]>, h: u32 },
}

impl Element {
    /// Permutation from 1-based images.
    pub fn perm_from_images(images: &[usize]) -> Option<Element> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
            out.push((x - 1) as u16);
        }
        Some(Element::Perm(out.into_boxed_slice()))
    }

    /// Permutation from disjoint cycles on points `1..=degree`.
    pub fn perm_from_cycles(degree: usize, cycles: &[&[usize]]) -> Element {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                images[a - 1] = (b - 1) as u16;
            }
        }
        Element::Perm(images.into_boxed_slice())
    }

    pub fn as_pair(&self) -> Option<(&[u8], u32)> {
        match self {
            Element::Pair { v, h } => Some((v, *h)),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut any = false;
                for start in 0..p.len() {
                    if seen[start] || p[start] as usize == start {
                        continue;
                    }
                    any = true;
                    let mut cycle = vec![start + 1];
                    seen[start] = true;
                    let mut x = p[start] as usize;
                    while x != start {
                        seen[x] = true;
                        cycle.push(x + 1);
                        x = p[x] as usize;
                    }
                    let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
                    write!(f, "({})", parts.join(","))?;
                }
                if !any {
                    write!(f, "()")?;
                }
                Ok(())
            }
            Element::Mat(m) => write!(f, "mat{:?}", m),
            Element::Pair { v, h } => write!(f, "({:?}, h{})", v, h),
        }
    }
}
