//! Binary linear codes used to decode transversal X measurements.

use alloc::vec::Vec;

use rand::Rng;

use super::{AbortPolicy, LogicalRates};
use crate::error::{Error, Result};
use crate::math::powi;

/// Largest code length accepted by [`ClassicalCode`].
pub const MAX_LENGTH: usize = 32;
/// Largest code length for exhaustive 3^n enumeration.
pub const MAX_ENUMERATION_LENGTH: usize = 15;

/// Observed value at one position of a measured block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    One,
    Erased,
}

/// How a single position is corrupted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PatternModel {
    /// Lost w.p. `f_n`; a position that survives is flipped w.p. `f_u`.
    #[default]
    Independent,
    /// Lost w.p. `f_n`, flipped w.p. `f_u`, clean w.p. `1 - f_u - f_n`.
    Exclusive,
}

impl PatternModel {
    fn position_probs(self, f_u: f64, f_n: f64) -> (f64, f64, f64) {
        match self {
            PatternModel::Independent => (f_n, (1.0 - f_n) * f_u, (1.0 - f_n) * (1.0 - f_u)),
            PatternModel::Exclusive => (f_n, f_u, 1.0 - f_u - f_n),
        }
    }
}

/// A binary linear code with `k` designated parity masks whose values on a
/// codeword are the encoded logical bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    length: usize,
    generators: Vec<u32>,
    logical_masks: Vec<u32>,
    codewords: Vec<u32>,
    min_distance: u32,
}

impl ClassicalCode {
    pub fn new(length: usize, generators: &[u32], logical_masks: &[u32]) -> Result<Self> {
        if length == 0 || length > MAX_LENGTH {
            return Err(Error::CodeTooLarge(length));
        }
        if generators.is_empty() || generators.len() > 20 {
            return Err(Error::InvalidCode("need between 1 and 20 generator rows"));
        }
        if logical_masks.is_empty() {
            return Err(Error::InvalidCode("need at least one logical mask"));
        }
        let full = full_mask(length);
        if generators.iter().chain(logical_masks).any(|&g| g & !full != 0) {
            return Err(Error::InvalidCode("row has bits beyond the code length"));
        }
        if rank(generators) != generators.len() {
            return Err(Error::InvalidCode("generator rows are dependent"));
        }
        let mut codewords = Vec::with_capacity(1 << generators.len());
        for m in 0u32..(1 << generators.len()) {
            let mut c = 0;
            for (i, g) in generators.iter().enumerate() {
                if m >> i & 1 == 1 {
                    c ^= g;
                }
            }
            codewords.push(c);
        }
        codewords.sort_unstable();
        for &mask in logical_masks {
            if generators.iter().all(|g| (g & mask).count_ones() % 2 == 0) {
                return Err(Error::InvalidCode("logical mask is constant on the code"));
            }
        }
        let min_distance = codewords.iter().filter(|&&c| c != 0).map(|c| c.count_ones()).min().unwrap_or(0);
        Ok(ClassicalCode {
            length,
            generators: generators.to_vec(),
            logical_masks: logical_masks.to_vec(),
            codewords,
            min_distance,
        })
    }

    /// The [7,4,3] Hamming code read out by the weight parity of a codeword.
    pub fn steane() -> Self {
        ClassicalCode::new(7, &[0b1110000, 0b1001100, 0b0101010, 0b1101001], &[0x7f]).expect("Hamming code is valid")
    }

    /// The cyclic [23,12,7] Golay code with generator polynomial
    /// x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, read out by weight parity.
    pub fn golay() -> Self {
        let generators: Vec<u32> = (0..12).map(|i| 0xC75u32 << i).collect();
        ClassicalCode::new(23, &generators, &[full_mask(23)]).expect("Golay code is valid")
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of encoded logical bits.
    pub fn logical_bits(&self) -> usize {
        self.logical_masks.len()
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }

    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    pub fn contains(&self, word: u32) -> bool {
        self.codewords.binary_search(&word).is_ok()
    }

    /// Number of logical bits on which two codewords disagree.
    pub fn logical_difference(&self, a: u32, b: u32) -> u32 {
        self.logical_masks.iter().map(|m| ((a ^ b) & m).count_ones() & 1).sum()
    }

    /// Codewords that are most likely to have produced `word`.
    pub fn decode_most_likely(&self, word: &[Symbol], f_u: f64, f_n: f64) -> Result<TieSet> {
        if word.len() != self.length {
            return Err(Error::WordLength {
                expected: self.length,
                got: word.len(),
            });
        }
        let mut bits = 0u32;
        let mut erased = 0u32;
        for (i, s) in word.iter().enumerate() {
            match s {
                Symbol::One => bits |= 1 << i,
                Symbol::Erased => erased |= 1 << i,
                Symbol::Zero => {}
            }
        }
        Ok(self.decode_bits(bits, erased, preference(PatternModel::Independent, f_u, f_n)))
    }

    fn decode_bits(&self, bits: u32, erased: u32, pref: Preference) -> TieSet {
        let keep = !erased;
        let mut best = match pref {
            Preference::FewerFlips => u32::MAX,
            Preference::MoreFlips => 0,
            Preference::Indifferent => 0,
        };
        let mut ties = Vec::new();
        for &c in &self.codewords {
            let d = ((c ^ bits) & keep).count_ones();
            let better = match pref {
                Preference::FewerFlips => d < best,
                Preference::MoreFlips => d > best,
                Preference::Indifferent => false,
            };
            if better {
                best = d;
                ties.clear();
            }
            if d == best || pref == Preference::Indifferent {
                ties.push(c);
            }
        }
        TieSet { codewords: ties }
    }

    /// Logical errors of decoding `flips` (relative to the all-zero
    /// codeword) with positions `erased` unreadable, averaged over ties.
    fn logical_errors(&self, flips: u32, erased: u32, pref: Preference) -> f64 {
        let ties = self.decode_bits(flips & !erased, erased, pref);
        let wrong: u32 = ties.codewords.iter().map(|&c| self.logical_difference(c, 0)).sum();
        f64::from(wrong) / ties.codewords.len() as f64
    }
}

/// Every codeword achieving the best decoding score, each chosen with equal
/// probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieSet {
    pub codewords: Vec<u32>,
}

impl TieSet {
    pub fn weight(&self) -> f64 {
        1.0 / self.codewords.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Preference {
    FewerFlips,
    MoreFlips,
    Indifferent,
}

fn preference(model: PatternModel, f_u: f64, f_n: f64) -> Preference {
    let (_, flip, clean) = model.position_probs(f_u, f_n);
    if flip < clean {
        Preference::FewerFlips
    } else if flip > clean {
        Preference::MoreFlips
    } else {
        Preference::Indifferent
    }
}

fn full_mask(length: usize) -> u32 {
    if length >= 32 {
        u32::MAX
    } else {
        (1u32 << length) - 1
    }
}

fn rank(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn check_inputs(f_u: f64, f_n: f64) -> Result<()> {
    for (name, value) in [("f_u", f_u), ("f_n", f_n)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidParameter { name, value });
        }
    }
    Ok(())
}

/// Exact rates by summing over every loss/flip pattern of the block.
pub fn enumerate_logical_rate(code: &ClassicalCode, abort: AbortPolicy, f_u: f64, f_n: f64) -> Result<LogicalRates> {
    enumerate_with_mass(code, abort, f_u, f_n).map(|(rates, _)| rates)
}

/// Like [`enumerate_logical_rate`], also returning the total probability of
/// all enumerated patterns including aborted ones.
pub fn enumerate_with_mass(code: &ClassicalCode, abort: AbortPolicy, f_u: f64, f_n: f64) -> Result<(LogicalRates, f64)> {
    check_inputs(f_u, f_n)?;
    let n = code.length;
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::CodeTooLarge(n));
    }
    let (p_loss, p_flip, p_clean) = PatternModel::Independent.position_probs(f_u, f_n);
    let pref = preference(PatternModel::Independent, f_u, f_n);
    let full = full_mask(n);
    let mut flip_sum = 0.0;
    let mut success = 0.0;
    let mut mass = 0.0;
    for erased in 0..=full {
        let losses = erased.count_ones();
        let live = full & !erased;
        let loss_factor = powi(p_loss, losses);
        // Iterate all submasks of the surviving positions.
        let mut flips = live;
        loop {
            let k = flips.count_ones();
            let p = loss_factor * powi(p_flip, k) * powi(p_clean, n as u32 - losses - k);
            mass += p;
            if abort.accepts(losses) {
                success += p;
                if p != 0.0 {
                    flip_sum += p * code.logical_errors(flips, erased, pref);
                }
            }
            if flips == 0 {
                break;
            }
            flips = (flips - 1) & live;
        }
    }
    let rates = LogicalRates {
        flip: flip_sum / code.logical_bits() as f64,
        success,
    };
    Ok((rates, mass))
}

/// Monte-Carlo estimate of the decoder's logical flip rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledRates {
    pub trials: u64,
    /// Mean logical errors per logical bit over all trials, aborted trials
    /// counting as zero, matching [`LogicalRates::flip`].
    pub flip: f64,
    pub flip_stderr: f64,
    pub success: f64,
}

/// Samples `trials` corrupted blocks and decodes them.
pub fn sample_logical_rate<R: Rng + ?Sized>(
    code: &ClassicalCode,
    abort: AbortPolicy,
    f_u: f64,
    f_n: f64,
    model: PatternModel,
    trials: u64,
    rng: &mut R,
) -> Result<SampledRates> {
    check_inputs(f_u, f_n)?;
    if model == PatternModel::Exclusive && f_u + f_n > 1.0 {
        return Err(Error::InvalidParameter {
            name: "f_u + f_n",
            value: f_u + f_n,
        });
    }
    if trials == 0 {
        return Err(Error::Empty("trials"));
    }
    let (p_loss, p_flip, _) = model.position_probs(f_u, f_n);
    let pref = preference(model, f_u, f_n);
    let k = code.logical_bits() as f64;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut accepted = 0u64;
    for _ in 0..trials {
        let mut erased = 0u32;
        let mut flips = 0u32;
        for i in 0..code.length {
            let u: f64 = rng.gen();
            if u < p_loss {
                erased |= 1 << i;
            } else if u < p_loss + p_flip {
                flips |= 1 << i;
            }
        }
        if !abort.accepts(erased.count_ones()) {
            continue;
        }
        accepted += 1;
        let t = flips.count_ones();
        // Below half the distance the decoder provably returns the truth.
        if pref == Preference::FewerFlips && 2 * t + erased.count_ones() < code.min_distance {
            continue;
        }
        let x = code.logical_errors(flips, erased, pref) / k;
        sum += x;
        sum_sq += x * x;
    }
    let nt = trials as f64;
    let mean = sum / nt;
    let var = (sum_sq / nt - mean * mean).max(0.0);
    Ok(SampledRates {
        trials,
        flip: mean,
        flip_stderr: libm::sqrt(var / nt),
        success: accepted as f64 / nt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word(bits: u32, erased: u32, n: usize) -> Vec<Symbol> {
        (0..n)
            .map(|i| {
                if erased >> i & 1 == 1 {
                    Symbol::Erased
                } else if bits >> i & 1 == 1 {
                    Symbol::One
                } else {
                    Symbol::Zero
                }
            })
            .collect()
    }

    #[test]
    fn golay_weight_distribution() {
        let g = ClassicalCode::golay();
        let mut counts = [0u32; 24];
        for c in g.codewords() {
            counts[c.count_ones() as usize] += 1;
        }
        let expected = [(0, 1), (7, 253), (8, 506), (11, 1288), (12, 1288), (15, 506), (16, 253), (23, 1)];
        for (w, n) in expected {
            assert_eq!(counts[w], n, "weight {w}");
        }
        assert_eq!(counts.iter().sum::<u32>(), 4096);
        assert_eq!(g.min_distance(), 7);
    }

    #[test]
    fn steane_parameters() {
        let s = ClassicalCode::steane();
        assert_eq!((s.length(), s.dimension(), s.min_distance()), (7, 4, 3));
        assert_eq!(s.logical_bits(), 1);
    }

    #[test]
    fn decoder_examples() {
        let s = ClassicalCode::steane();
        let c = s.codewords()[5];
        let clean = s.decode_most_likely(&word(c, 0, 7), 0.01, 0.0).unwrap();
        assert_eq!(clean.codewords, [c]);
        for i in 0..7 {
            let t = s.decode_most_likely(&word(c ^ (1 << i), 0, 7), 0.01, 0.0).unwrap();
            assert_eq!(t.codewords, [c]);
        }
        let all = s.decode_most_likely(&word(0, 0x7f, 7), 0.01, 0.3).unwrap();
        assert_eq!(all.codewords.len(), 16);
        let wrong = all.codewords.iter().filter(|&&c| s.logical_difference(c, 0) == 1).count();
        assert_eq!(wrong as f64 * all.weight(), 0.5);
        assert!(matches!(
            s.decode_most_likely(&word(0, 0, 6), 0.01, 0.0),
            Err(Error::WordLength { expected: 7, got: 6 })
        ));
    }

    #[test]
    fn invalid_codes_are_rejected() {
        assert!(ClassicalCode::new(3, &[0b011, 0b011], &[0b001]).is_err());
        assert!(ClassicalCode::new(3, &[0b011], &[0b011]).is_err());
        assert!(ClassicalCode::new(3, &[0b1011], &[0b001]).is_err());
        assert!(ClassicalCode::new(40, &[1], &[1]).is_err());
    }

    #[test]
    fn enumeration_edges() {
        let s = ClassicalCode::steane();
        let r = enumerate_logical_rate(&s, AbortPolicy::Never, 0.0, 0.0).unwrap();
        assert_eq!((r.flip, r.success), (0.0, 1.0));
        let g = ClassicalCode::golay();
        assert!(matches!(
            enumerate_logical_rate(&g, AbortPolicy::Never, 0.1, 0.0),
            Err(Error::CodeTooLarge(23))
        ));
        for (fu, fn_) in [(0.1, 0.2), (0.5, 0.5), (0.7, 0.05), (0.0, 1.0)] {
            let (_, mass) = enumerate_with_mass(&s, AbortPolicy::MaxLosses(2), fu, fn_).unwrap();
            assert!((mass - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn repetition_code_by_hand() {
        // Three-bit repetition: fails on two or three flips, no losses.
        let rep = ClassicalCode::new(3, &[0b111], &[0b001]).unwrap();
        let f = 0.1;
        let r = enumerate_logical_rate(&rep, AbortPolicy::Never, f, 0.0).unwrap();
        assert!((r.flip - (3.0 * f * f * (1.0 - f) + f * f * f)).abs() < 1e-15);
    }

    #[test]
    fn sampling_agrees_with_enumeration() {
        let s = ClassicalCode::steane();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let exact = enumerate_logical_rate(&s, AbortPolicy::MaxLosses(3), 0.05, 0.1).unwrap();
        let est = sample_logical_rate(&s, AbortPolicy::MaxLosses(3), 0.05, 0.1, PatternModel::Independent, 200_000, &mut rng).unwrap();
        assert!((est.flip - exact.flip).abs() < 4.0 * est.flip_stderr, "{est:?} vs {exact:?}");
        assert!((est.success - exact.success).abs() < 0.01);
    }
}
