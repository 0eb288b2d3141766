use std::cmp::Ordering;

/// Exponent vector with a cached total degree.
///
/// `Ord` is graded lexicographic: total degree first, then exponents compared
/// from the first ring variable to the last.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[u32]>,
    total: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let total = exps.iter().sum();
        Monomial { exps: exps.into_boxed_slice(), total }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), total: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            total: self.total + other.total,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps: exps.into_boxed_slice(), total: self.total - other.total })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn with_exp(&self, index: usize, e: u32) -> Monomial {
        let mut exps = self.exps.to_vec();
        exps[index] = e;
        Monomial::new(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total.cmp(&other.total).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, graded-lex
/// descending (for three variables and degree 1: `t1, t2, t3`).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Monomials of total degree at most `degree`, by increasing degree and
/// graded-lex descending inside a degree: `1, t1, t2, t1^2, t1*t2, t2^2`.
pub fn monomials_up_to_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    (0..=degree).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
