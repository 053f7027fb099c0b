//! Exact probability and information measures on finite alphabets.
//!
//! A [`JointPmf`] is a dense table over the cartesian product of named
//! variables; joints are assembled from conditional [`Factor`]s following a
//! factorization order. All information quantities are in bits (log base 2)
//! with the convention 0·log 0 = 0.
//!
//! Every table in this crate is small (a few hundred cells at most), so
//! everything is stored densely and computed exactly.

use thiserror::Error;

/// Cells with mass below this are treated as zero in entropy sums.
const ZERO_MASS: f64 = 1e-15;
/// Tolerance for normalization checks on kernels and joints.
const NORM_TOL: f64 = 1e-12;
/// Negative information values above this magnitude are rounding noise and
/// get clamped to zero; anything more negative is an internal error.
const NEG_TOL: f64 = 1e-12;

/// Alphabet index used for the erasure symbol of a binary erasure channel.
/// The BEC output alphabet is ordered (0, 1, erasure).
pub const ERASURE: usize = 2;

#[derive(Debug, Error)]
pub enum InfoError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is produced more than once")]
    DuplicateVariable(String),
    #[error("factor input `{0}` is not produced by any earlier factor")]
    DanglingInput(String),
    #[error("alphabet size mismatch for `{name}`: factor expects {expected}, joint has {actual}")]
    AlphabetMismatch {
        name: String,
        expected: usize,
        actual: usize,
    },
    #[error("kernel row {row} sums to {sum:.17}, expected 1")]
    UnnormalizedKernelRow { row: usize, sum: f64 },
    #[error("kernel has {got} entries, expected {want}")]
    KernelShape { got: usize, want: usize },
    #[error("negative mass {0}")]
    NegativeMass(f64),
    #[error("joint mass sums to {0:.17}, expected 1")]
    Unnormalized(f64),
    #[error("variable sets must be pairwise disjoint, `{0}` repeats")]
    OverlappingSets(String),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("information quantity {0} is negative beyond rounding tolerance")]
    NegativeInformation(f64),
}

pub type Result<T> = std::result::Result<T, InfoError>;

/// Joint probability mass function over an ordered tuple of named
/// finite-alphabet variables, stored as a dense row-major table
/// (last variable fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    vars: Vec<(String, usize)>,
    mass: Vec<f64>,
}

impl JointPmf {
    /// Builds a joint from an explicit table, validating nonnegativity and
    /// normalization.
    pub fn new(vars: Vec<(String, usize)>, mass: Vec<f64>) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::new();
        for (name, _) in &vars {
            if seen.contains(&name.as_str()) {
                return Err(InfoError::DuplicateVariable(name.clone()));
            }
            seen.push(name);
        }
        let cells: usize = vars.iter().map(|(_, k)| *k).product();
        if mass.len() != cells {
            return Err(InfoError::KernelShape {
                got: mass.len(),
                want: cells,
            });
        }
        if let Some(&bad) = mass.iter().find(|&&p| p < 0.0) {
            return Err(InfoError::NegativeMass(bad));
        }
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(InfoError::Unnormalized(sum));
        }
        Ok(JointPmf { vars, mass })
    }

    pub fn variables(&self) -> &[(String, usize)] {
        &self.vars
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| InfoError::UnknownVariable(name.to_string()))
    }

    fn sizes(&self) -> Vec<usize> {
        self.vars.iter().map(|(_, k)| *k).collect()
    }

    /// Probability of a full assignment (one index per variable, in order).
    pub fn prob(&self, assignment: &[usize]) -> f64 {
        debug_assert_eq!(assignment.len(), self.vars.len());
        self.mass[ravel(assignment, &self.sizes())]
    }

    /// Sums out all variables not in `keep`. Kept variables stay in their
    /// original order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        let mut keep_idx: Vec<usize> = Vec::with_capacity(keep.len());
        for name in keep {
            let i = self.var_index(name)?;
            if keep_idx.contains(&i) {
                return Err(InfoError::OverlappingSets(name.to_string()));
            }
            keep_idx.push(i);
        }
        keep_idx.sort_unstable();

        let sizes = self.sizes();
        let out_vars: Vec<(String, usize)> =
            keep_idx.iter().map(|&i| self.vars[i].clone()).collect();
        let out_sizes: Vec<usize> = out_vars.iter().map(|(_, k)| *k).collect();
        let out_cells: usize = out_sizes.iter().product::<usize>().max(1);
        let mut out_mass = vec![0.0; out_cells];

        let mut coords = vec![0usize; sizes.len()];
        for (flat, &p) in self.mass.iter().enumerate() {
            unravel(flat, &sizes, &mut coords);
            let mut out_flat = 0usize;
            for (j, &i) in keep_idx.iter().enumerate() {
                out_flat = out_flat * out_sizes[j] + coords[i];
            }
            out_mass[out_flat] += p;
        }
        Ok(JointPmf {
            vars: out_vars,
            mass: out_mass,
        })
    }

    /// Shannon entropy H(vars) in bits of the marginal on `vars`.
    pub fn entropy(&self, vars: &[&str]) -> Result<f64> {
        let marginal = self.marginalize(vars)?;
        let mut h = 0.0;
        for &p in &marginal.mass {
            if p > ZERO_MASS {
                h -= p * p.log2();
            }
        }
        Ok(h.max(0.0))
    }

    /// Conditional entropy H(x | given) = H(x, given) − H(given).
    pub fn conditional_entropy(&self, x: &[&str], given: &[&str]) -> Result<f64> {
        check_disjoint(&[x, given])?;
        let joint = union(x, given);
        let h = self.entropy(&joint)? - self.entropy(given)?;
        clamp_information(h)
    }

    /// Mutual information I(x; y) in bits.
    pub fn mutual_information(&self, x: &[&str], y: &[&str]) -> Result<f64> {
        self.conditional_mutual_information(x, y, &[])
    }

    /// Conditional mutual information I(x; y | given) in bits, computed from
    /// entropies as H(x|given) − H(x|y,given). The three sets must be
    /// pairwise disjoint. Tiny negative rounding residue is clamped to zero.
    pub fn conditional_mutual_information(
        &self,
        x: &[&str],
        y: &[&str],
        given: &[&str],
    ) -> Result<f64> {
        check_disjoint(&[x, y, given])?;
        let xz = union(x, given);
        let yz = union(y, given);
        let xyz = union(&xz, y);
        let i =
            self.entropy(&xz)? + self.entropy(&yz)? - self.entropy(&xyz)? - self.entropy(given)?;
        clamp_information(i)
    }
}

fn clamp_information(v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -NEG_TOL {
        Ok(0.0)
    } else {
        Err(InfoError::NegativeInformation(v))
    }
}

fn union<'a>(a: &[&'a str], b: &[&'a str]) -> Vec<&'a str> {
    let mut v: Vec<&'a str> = a.to_vec();
    for name in b {
        if !v.contains(name) {
            v.push(name);
        }
    }
    v
}

fn check_disjoint(sets: &[&[&str]]) -> Result<()> {
    let mut seen: Vec<&str> = Vec::new();
    for set in sets {
        for name in *set {
            if seen.contains(name) {
                return Err(InfoError::OverlappingSets(name.to_string()));
            }
            seen.push(name);
        }
    }
    Ok(())
}

fn ravel(coords: &[usize], sizes: &[usize]) -> usize {
    let mut flat = 0usize;
    for (c, k) in coords.iter().zip(sizes) {
        debug_assert!(c < k);
        flat = flat * k + c;
    }
    flat
}

fn unravel(mut flat: usize, sizes: &[usize], coords: &mut [usize]) {
    for i in (0..sizes.len()).rev() {
        coords[i] = flat % sizes[i];
        flat /= sizes[i];
    }
}

/// Conditional distribution of `outputs` given `inputs`: a stochastic kernel
/// whose rows (one per input assignment) sum to one.
///
/// A factor with no inputs is a prior. [`joint_from_factors`] chains factors
/// into a joint along the declared order.
#[derive(Debug, Clone)]
pub struct Factor {
    inputs: Vec<(String, usize)>,
    outputs: Vec<(String, usize)>,
    /// Row-major: rows indexed by the input assignment, columns by the
    /// output assignment.
    kernel: Vec<f64>,
}

impl Factor {
    pub fn new(
        inputs: Vec<(String, usize)>,
        outputs: Vec<(String, usize)>,
        kernel: Vec<f64>,
    ) -> Result<Self> {
        let rows: usize = inputs.iter().map(|(_, k)| *k).product();
        let cols: usize = outputs.iter().map(|(_, k)| *k).product();
        if kernel.len() != rows * cols {
            return Err(InfoError::KernelShape {
                got: kernel.len(),
                want: rows * cols,
            });
        }
        if let Some(&bad) = kernel.iter().find(|&&p| p < 0.0) {
            return Err(InfoError::NegativeMass(bad));
        }
        for r in 0..rows {
            let sum: f64 = kernel[r * cols..(r + 1) * cols].iter().sum();
            if (sum - 1.0).abs() > NORM_TOL {
                return Err(InfoError::UnnormalizedKernelRow { row: r, sum });
            }
        }
        Ok(Factor {
            inputs,
            outputs,
            kernel,
        })
    }

    /// Source factor: a marginal distribution over one variable.
    pub fn prior(name: &str, probs: &[f64]) -> Result<Self> {
        Factor::new(
            Vec::new(),
            vec![(name.to_string(), probs.len())],
            probs.to_vec(),
        )
    }

    /// Bernoulli(p) source over {0, 1}: P(1) = p.
    pub fn bernoulli(name: &str, p: f64) -> Result<Self> {
        check_probability(p)?;
        Factor::prior(name, &[1.0 - p, p])
    }

    /// Binary symmetric channel with the given crossover probability.
    pub fn bsc(input: &str, output: &str, crossover: f64) -> Result<Self> {
        check_probability(crossover)?;
        let c = crossover;
        Factor::new(
            vec![(input.to_string(), 2)],
            vec![(output.to_string(), 2)],
            vec![1.0 - c, c, c, 1.0 - c],
        )
    }

    /// Binary erasure channel; the output alphabet is (0, 1, erasure) with
    /// the erasure symbol at index [`ERASURE`].
    pub fn bec(input: &str, output: &str, erasure_prob: f64) -> Result<Self> {
        check_probability(erasure_prob)?;
        let b = erasure_prob;
        Factor::new(
            vec![(input.to_string(), 2)],
            vec![(output.to_string(), 3)],
            vec![1.0 - b, 0.0, b, 0.0, 1.0 - b, b],
        )
    }

    /// Deterministic factor computed from the inputs.
    pub fn from_map(
        inputs: Vec<(String, usize)>,
        output: &str,
        output_size: usize,
        map: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        let rows: usize = inputs.iter().map(|(_, k)| *k).product();
        let sizes: Vec<usize> = inputs.iter().map(|(_, k)| *k).collect();
        let mut kernel = vec![0.0; rows * output_size];
        let mut coords = vec![0usize; inputs.len()];
        for r in 0..rows {
            unravel(r, &sizes, &mut coords);
            let out = map(&coords);
            assert!(out < output_size, "map value out of range");
            kernel[r * output_size + out] = 1.0;
        }
        Factor::new(inputs, vec![(output.to_string(), output_size)], kernel)
    }

    /// XOR of two binary inputs.
    pub fn xor(a: &str, b: &str, output: &str) -> Result<Self> {
        Factor::from_map(
            vec![(a.to_string(), 2), (b.to_string(), 2)],
            output,
            2,
            |c| c[0] ^ c[1],
        )
    }

    /// Identity channel (noiseless copy).
    pub fn copy(input: &str, size: usize, output: &str) -> Result<Self> {
        Factor::from_map(vec![(input.to_string(), size)], output, size, |c| c[0])
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(InfoError::ProbabilityOutOfRange(p));
    }
    Ok(())
}

/// Multiplies a chain of factors into a joint. Every input variable of a
/// factor must be produced by an earlier factor; no variable may be produced
/// twice. The resulting variable order is the production order.
pub fn joint_from_factors(factors: &[Factor]) -> Result<JointPmf> {
    let mut vars: Vec<(String, usize)> = Vec::new();
    let mut mass: Vec<f64> = vec![1.0];

    for factor in factors {
        // Re-validate rows here so raw Factor values cannot sneak an
        // unnormalized kernel past construction.
        let cols: usize = factor.outputs.iter().map(|(_, k)| *k).product();
        let rows: usize = factor.inputs.iter().map(|(_, k)| *k).product();
        for r in 0..rows {
            let sum: f64 = factor.kernel[r * cols..(r + 1) * cols].iter().sum();
            if (sum - 1.0).abs() > NORM_TOL {
                return Err(InfoError::UnnormalizedKernelRow { row: r, sum });
            }
        }
        for (name, _) in &factor.outputs {
            if vars.iter().any(|(n, _)| n == name) {
                return Err(InfoError::DuplicateVariable(name.clone()));
            }
        }
        let mut in_pos: Vec<usize> = Vec::with_capacity(factor.inputs.len());
        for (name, size) in &factor.inputs {
            let pos = vars
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| InfoError::DanglingInput(name.clone()))?;
            if vars[pos].1 != *size {
                return Err(InfoError::AlphabetMismatch {
                    name: name.clone(),
                    expected: *size,
                    actual: vars[pos].1,
                });
            }
            in_pos.push(pos);
        }

        let old_sizes: Vec<usize> = vars.iter().map(|(_, k)| *k).collect();
        let in_sizes: Vec<usize> = factor.inputs.iter().map(|(_, k)| *k).collect();
        let mut new_mass = vec![0.0; mass.len() * cols];
        let mut coords = vec![0usize; old_sizes.len()];
        let mut in_coords = vec![0usize; in_pos.len()];
        for (old_flat, &p) in mass.iter().enumerate() {
            unravel(old_flat, &old_sizes, &mut coords);
            for (j, &pos) in in_pos.iter().enumerate() {
                in_coords[j] = coords[pos];
            }
            let row = ravel(&in_coords, &in_sizes);
            let base = old_flat * cols;
            let krow = row * cols;
            for c in 0..cols {
                new_mass[base + c] = p * factor.kernel[krow + c];
            }
        }
        vars.extend(factor.outputs.iter().cloned());
        mass = new_mass;
    }

    let sum: f64 = mass.iter().sum();
    if (sum - 1.0).abs() > NORM_TOL {
        return Err(InfoError::Unnormalized(sum));
    }
    Ok(JointPmf { vars, mass })
}

/// Binary entropy h₂(p) in bits; the endpoints return 0. Computed from
/// min(p, 1−p) so that h₂(p) and h₂(1−p) agree bit-for-bit whenever the
/// complement is exactly representable.
pub fn binary_entropy(p: f64) -> Result<f64> {
    check_probability(p)?;
    if p <= 0.0 || p >= 1.0 {
        return Ok(0.0);
    }
    let q = p.min(1.0 - p);
    let r = 1.0 - q;
    Ok(-q * q.log2() - r * r.log2())
}

/// Binary convolution a ⋆ b = a(1−b) + b(1−a), the crossover probability of
/// two cascaded BSCs.
pub fn binary_convolution(a: f64, b: f64) -> Result<f64> {
    check_probability(a)?;
    check_probability(b)?;
    Ok(a * (1.0 - b) + b * (1.0 - a))
}
