//! Property tests for the finite-alphabet information engine: chain rule,
//! nonnegativity, data processing, and the small algebraic identities.

use proptest::prelude::*;
use secrecylab_core::info::{
    binary_convolution, binary_entropy, joint_from_factors, Factor, JointPmf,
};

/// Random joint over up to 4 variables with alphabets of size up to 3.
fn random_joint() -> impl Strategy<Value = JointPmf> {
    proptest::collection::vec(2usize..=3, 1..=4).prop_flat_map(|sizes| {
        let cells: usize = sizes.iter().product();
        proptest::collection::vec(1e-6..1.0f64, cells).prop_map(move |raw| {
            let total: f64 = raw.iter().sum();
            let mass: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let vars: Vec<(String, usize)> = sizes
                .iter()
                .enumerate()
                .map(|(i, &k)| (format!("X{i}"), k))
                .collect();
            JointPmf::new(vars, mass).expect("normalized by construction")
        })
    })
}

/// Random row-stochastic kernel entries for a `rows`×`cols` factor.
fn random_kernel(rows: usize, cols: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(1e-6..1.0f64, rows * cols).prop_map(move |raw| {
        let mut kernel = raw;
        for r in 0..rows {
            let row = &mut kernel[r * cols..(r + 1) * cols];
            let total: f64 = row.iter().sum();
            for v in row.iter_mut() {
                *v /= total;
            }
        }
        kernel
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn produced_joints_are_normalized(joint in random_joint()) {
        let total: f64 = joint.mass().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        // marginals stay normalized too
        let first = joint.variables()[0].0.clone();
        let marginal = joint.marginalize(&[first.as_str()]).unwrap();
        let total: f64 = marginal.mass().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn chain_rule_holds(joint in random_joint()) {
        let names: Vec<String> = joint.variables().iter().map(|(n, _)| n.clone()).collect();
        let split = 1.max(names.len() / 2);
        let x: Vec<&str> = names[..split].iter().map(|s| s.as_str()).collect();
        let y: Vec<&str> = names[split..].iter().map(|s| s.as_str()).collect();
        if y.is_empty() {
            return Ok(());
        }
        let all: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let joint_entropy = joint.entropy(&all).unwrap();
        let chained = joint.entropy(&x).unwrap() + joint.conditional_entropy(&y, &x).unwrap();
        prop_assert!((joint_entropy - chained).abs() <= 1e-10,
            "H(all)={joint_entropy}, H(X)+H(Y|X)={chained}");
    }

    #[test]
    fn conditional_mutual_information_is_nonnegative(joint in random_joint()) {
        let names: Vec<String> = joint.variables().iter().map(|(n, _)| n.clone()).collect();
        if names.len() < 2 {
            return Ok(());
        }
        let x = [names[0].as_str()];
        let y = [names[1].as_str()];
        let given: Vec<&str> = names[2..].iter().map(|s| s.as_str()).collect();
        let i = joint.conditional_mutual_information(&x, &y, &given).unwrap();
        prop_assert!(i >= 0.0);
    }

    #[test]
    fn data_processing_inequality(
        prior in random_kernel(1, 3),
        k_xy in random_kernel(3, 3),
        k_yz in random_kernel(3, 3),
    ) {
        // X — Y — Z by construction
        let joint = joint_from_factors(&[
            Factor::new(vec![], vec![("X".to_string(), 3)], prior).unwrap(),
            Factor::new(vec![("X".to_string(), 3)], vec![("Y".to_string(), 3)], k_xy).unwrap(),
            Factor::new(vec![("Y".to_string(), 3)], vec![("Z".to_string(), 3)], k_yz).unwrap(),
        ])
        .unwrap();
        let i_xz = joint.mutual_information(&["X"], &["Z"]).unwrap();
        let i_xy = joint.mutual_information(&["X"], &["Y"]).unwrap();
        prop_assert!(i_xz <= i_xy + 1e-10, "I(X;Z)={i_xz} > I(X;Y)={i_xy}");
    }

    #[test]
    fn binary_entropy_is_symmetric(k in 0u32..=4096) {
        // dyadic arguments have exactly representable complements, so the
        // symmetry must hold bit-for-bit
        let p = k as f64 / 4096.0;
        prop_assert_eq!(
            binary_entropy(p).unwrap(),
            binary_entropy(1.0 - p).unwrap()
        );
    }

    #[test]
    fn binary_entropy_is_symmetric_up_to_complement_rounding(p in 0.0..=1.0f64) {
        // for arbitrary p the complement itself rounds; the entropy values
        // may then differ by at most that rounding, never more
        let diff = (binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap()).abs();
        prop_assert!(diff <= 1e-15, "diff={diff}");
    }

    #[test]
    fn binary_convolution_commutes_and_associates(
        a in 0.0..=1.0f64,
        b in 0.0..=1.0f64,
        c in 0.0..=1.0f64,
    ) {
        let ab = binary_convolution(a, b).unwrap();
        let ba = binary_convolution(b, a).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-14);
        let left = binary_convolution(ab, c).unwrap();
        let right = binary_convolution(a, binary_convolution(b, c).unwrap()).unwrap();
        prop_assert!((left - right).abs() <= 1e-14, "left={left} right={right}");
        prop_assert!((0.0..=1.0).contains(&left));
    }
}
