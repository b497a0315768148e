use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FamilyError;

/// Classical memory contents: the set of `n`-bit addresses that store 1.
///
/// Addresses are integers with x₁ as the most significant bit, so the string
/// `0011` is address 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MemorySpec {
    n: u32,
    ones: BTreeSet<u64>,
}

pub const MAX_ADDRESS_BITS: u32 = 63;

impl MemorySpec {
    pub fn new(n: u32, ones: impl IntoIterator<Item = u64>) -> Result<MemorySpec, FamilyError> {
        if n == 0 || n > MAX_ADDRESS_BITS {
            return Err(FamilyError::AddressWidth(n));
        }
        let mut set = BTreeSet::new();
        for a in ones {
            if a >> n != 0 {
                return Err(FamilyError::AddressRange { address: a, n });
            }
            if !set.insert(a) {
                return Err(FamilyError::DuplicateAddress(format_address(a, n)));
            }
        }
        if set.is_empty() {
            return Err(FamilyError::EmptyMemory);
        }
        Ok(MemorySpec { n, ones: set })
    }

    /// As [`MemorySpec::new`] but the number of ones must be a power of two.
    pub fn exact_power(n: u32, ones: impl IntoIterator<Item = u64>) -> Result<MemorySpec, FamilyError> {
        let m = MemorySpec::new(n, ones)?;
        if !m.ones.len().is_power_of_two() {
            return Err(FamilyError::NotPowerOfTwo(m.ones.len()));
        }
        Ok(m)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ones(&self) -> &BTreeSet<u64> {
        &self.ones
    }

    pub fn len(&self) -> usize {
        self.ones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }

    /// `log₂ |ones|` when that is an integer.
    pub fn q(&self) -> Option<u32> {
        self.ones.len().is_power_of_two().then(|| self.ones.len().trailing_zeros())
    }

    pub fn contains(&self, address: u64) -> bool {
        self.ones.contains(&address)
    }

    /// The addresses storing 0, or `None` when every cell stores 1.
    pub fn complement(&self) -> Option<MemorySpec> {
        let ones: BTreeSet<u64> = (0..1u64 << self.n).filter(|a| !self.ones.contains(a)).collect();
        (!ones.is_empty()).then_some(MemorySpec { n: self.n, ones })
    }

    /// Bit `i` of `address`, with `i = 0` the most significant.
    pub fn bit(&self, address: u64, i: u32) -> bool {
        address >> (self.n - 1 - i) & 1 == 1
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for &a in &self.ones {
            s.push_str(&format_address(a, self.n));
            s.push('\n');
        }
        s
    }

    /// Parses the memory file format and requires a power-of-two count.
    pub fn parse(text: &str) -> Result<MemorySpec, FamilyError> {
        let err = |line: usize, reason: String| FamilyError::MemoryParse { line, reason };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "empty memory file".into()))?;
        let n: u32 = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| err(hl + 1, format!("expected 'n=<int>', got '{}'", header.trim())))?;
        if n == 0 || n > MAX_ADDRESS_BITS {
            return Err(err(hl + 1, format!("address width {n} out of range")));
        }
        let mut seen = BTreeSet::new();
        for (i, l) in lines {
            let l = l.trim();
            if l.len() != n as usize || !l.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(err(i + 1, format!("expected a {n}-bit binary address, got '{l}'")));
            }
            let a = u64::from_str_radix(l, 2).expect("checked binary");
            if !seen.insert(a) {
                return Err(err(i + 1, format!("duplicate address {l}")));
            }
        }
        MemorySpec::exact_power(n, seen)
    }
}

pub fn format_address(a: u64, n: u32) -> String {
    format!("{a:0width$b}", width = n as usize)
}

/// `2^q` distinct addresses drawn from a seeded ChaCha stream.
pub fn random_memory(n: u32, q: u32, seed: u64) -> Result<MemorySpec, FamilyError> {
    if q >= n {
        return Err(FamilyError::FullnessRange { n, q });
    }
    if n > 40 {
        return Err(FamilyError::AddressWidth(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ones = sample(&mut rng, 1usize << n, 1usize << q).into_iter().map(|a| a as u64);
    MemorySpec::exact_power(n, ones)
}

/// Memory whose top-`k`-bit prefixes are evenly loaded: each prefix owns
/// `2^(q-k)` addresses when `k < q`, otherwise all `2^q` prefixes differ.
pub fn balanced_memory(n: u32, q: u32, k: u32, seed: u64) -> Result<MemorySpec, FamilyError> {
    if q >= n || k == 0 || k >= n {
        return Err(FamilyError::FullnessRange { n, q });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = n - k;
    let mut ones = Vec::with_capacity(1 << q);
    if k < q {
        for p in 0..1u64 << k {
            for suffix in sample(&mut rng, 1usize << s, 1usize << (q - k)) {
                ones.push(p << s | suffix as u64);
            }
        }
    } else {
        for p in sample(&mut rng, 1usize << k, 1usize << q) {
            ones.push((p as u64) << s | rng.gen_range(0..1u64 << s));
        }
    }
    MemorySpec::exact_power(n, ones)
}

/// Memory where one prefix owns `2^(q-1) + 1` addresses and the rest are
/// spread one per prefix where possible.
pub fn worst_case_memory(n: u32, q: u32, k: u32, seed: u64) -> Result<MemorySpec, FamilyError> {
    if q == 0 || q >= n || k == 0 || k >= n {
        return Err(FamilyError::FullnessRange { n, q });
    }
    let s = n - k;
    let heavy = (1u64 << (q - 1)) + 1;
    if heavy > 1u64 << s {
        return Err(FamilyError::Invalid(format!(
            "a {k}-bit prefix cannot own {heavy} addresses with only {s} suffix bits"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p0 = rng.gen_range(0..1u64 << k);
    let mut ones: BTreeSet<u64> =
        sample(&mut rng, 1usize << s, heavy as usize).into_iter().map(|x| p0 << s | x as u64).collect();
    let want = 1usize << q;
    let mut prefixes: Vec<u64> = (0..1u64 << k).filter(|&p| p != p0).collect();
    // shuffle by sampling an index permutation
    let order = sample(&mut rng, prefixes.len(), prefixes.len()).into_vec();
    prefixes = order.into_iter().map(|i| prefixes[i]).collect();
    let mut it = prefixes.iter().cycle();
    while ones.len() < want {
        let p = *it.next().expect("at least one other prefix");
        let a = p << s | rng.gen_range(0..1u64 << s);
        ones.insert(a);
    }
    MemorySpec::exact_power(n, ones)
}
