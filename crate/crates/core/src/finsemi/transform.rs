use std::fmt;

const UNDEFINED: u32 = u32::MAX;

/// A partial map on `{0, .., n-1}` acting on the right: `x·(st) = (x·s)·t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTransformation {
    images: Box<[u32]>,
}

impl PartialTransformation {
    pub fn new(images: impl IntoIterator<Item = Option<usize>>) -> Self {
        let images = images
            .into_iter()
            .map(|x| x.map_or(UNDEFINED, |v| v as u32))
            .collect();
        PartialTransformation { images }
    }

    /// Total map from a plain image list.
    pub fn total(images: &[usize]) -> Self {
        Self::new(images.iter().map(|&x| Some(x)))
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(Some))
    }

    pub fn empty(n: usize) -> Self {
        Self::new(std::iter::repeat_n(None, n))
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        match self.images[x] {
            UNDEFINED => None,
            v => Some(v as usize),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        let images = self
            .images
            .iter()
            .map(|&x| if x == UNDEFINED { UNDEFINED } else { other.images[x as usize] })
            .collect();
        PartialTransformation { images }
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|&x| self.images[x] != UNDEFINED)
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self
            .images
            .iter()
            .filter(|&&x| x != UNDEFINED)
            .map(|&x| x as usize)
            .collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(|&x| x != UNDEFINED)
    }

    pub fn is_empty_map(&self) -> bool {
        self.images.iter().all(|&x| x == UNDEFINED)
    }
}

impl fmt::Debug for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *x == UNDEFINED {
                write!(f, "-")?;
            } else {
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let s = PartialTransformation::total(&[1, 2, 0]);
        let t = PartialTransformation::new([Some(0), None, Some(0)]);
        let st = s.then(&t);
        // 0 -> 1 -> undefined, 1 -> 2 -> 0, 2 -> 0 -> 0
        assert_eq!(st, PartialTransformation::new([None, Some(0), Some(0)]));
        assert_eq!(st.rank(), 1);
        assert!(!st.is_total());
    }

    #[test]
    fn empty_map_absorbs() {
        let z = PartialTransformation::empty(3);
        let s = PartialTransformation::total(&[2, 2, 1]);
        assert_eq!(z.then(&s), z);
        assert_eq!(s.then(&z), z);
        assert!(z.is_empty_map());
    }
}
