//! Deterministic report rendering. JSON documents use fixed field order and
//! numerically sorted arrays; floats print with Rust's shortest round-trip
//! formatting.

use blockdet::advisor::{self, ComplexityProfile, Route};
use blockdet::blocks::BlockDecomposition;
use blockdet::Scalar;
use sha2::{Digest, Sha256};

/// `{blocks, cut_vertices, cut_indices, size_identity_check}`; cut_indices
/// is an array of `[vertex, T]` pairs in vertex order.
pub fn decomposition_json(d: &BlockDecomposition) -> serde_json::Value {
    let blocks: Vec<Vec<usize>> = d.blocks().iter().map(|b| b.as_slice().to_vec()).collect();
    let cut_indices: Vec<[usize; 2]> = d
        .cut_vertices()
        .iter()
        .map(|&v| [v, d.cut_index(v).unwrap()])
        .collect();
    serde_json::json!({
        "blocks": blocks,
        "cut_vertices": d.cut_vertices(),
        "cut_indices": cut_indices,
        "size_identity_check": d.size_identity_holds(),
    })
}

/// The count travels as a decimal string; it may exceed u64.
pub fn bpartitions_json(
    count: &str,
    listing: Option<(Vec<Vec<Vec<usize>>>, bool)>,
) -> serde_json::Value {
    match listing {
        None => serde_json::json!({ "count": count }),
        Some((partitions, truncated)) => serde_json::json!({
            "count": count,
            "listed": partitions.len(),
            "truncated": truncated,
            "partitions": partitions,
        }),
    }
}

/// Key-value lines for `advise` when a matrix profile is available.
pub fn profile_text(p: &ComplexityProfile) -> String {
    let (det_route, per_route): (Route, Route) = advisor::recommend(p);
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(": ");
        out.push_str(&v);
        out.push('\n');
    };
    push("n", p.n.to_string());
    push("k", p.k.to_string());
    push(
        "block_sizes",
        p.sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    push(
        "block_cut_counts",
        p.cuts
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    push("gamma", p.gamma.to_string());
    push("delta", p.delta.to_string());
    push("epsilon", p.epsilon.to_string());
    push("det_cost", advisor::det_cost(p).to_string());
    push("det_dense_cost", advisor::det_dense_cost(p).to_string());
    push("det_route", det_route.to_string());
    push("per_cost", advisor::per_cost(p).to_string());
    push("per_dense_cost", advisor::per_dense_cost(p).to_string());
    push("per_route", per_route.to_string());
    out
}

/// Key-value lines for `advise` in direct (`--n/--delta`) mode.
pub fn bounds_text(n: usize, delta: usize, k: usize, epsilon: f64) -> blockdet::Result<String> {
    let det = advisor::gamma_bound_det(n, delta, k, epsilon)?;
    let per = advisor::gamma_bound_per(n, delta, k)?;
    Ok(format!(
        "n: {n}\ndelta: {delta}\nk: {k}\nepsilon: {epsilon}\ngamma_bound_det: {det}\ngamma_bound_per: {per}\n"
    ))
}

pub const BENCH_HEADER: &str = "family,n,method,wall_time_ms,result_digest";

pub fn bench_row(family: &str, n: usize, method: &str, millis: f64, value: &Scalar) -> String {
    format!(
        "{family},{n},{method},{millis:.3},{}",
        value_digest(value)
    )
}

/// First 16 hex characters of the SHA-256 of the value's decimal rendering.
pub fn value_digest(value: &Scalar) -> String {
    let hash = Sha256::digest(value.to_string().as_bytes());
    hash.iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use blockdet::blocks::decompose_matrix;
    use blockdet::fixtures;

    #[test]
    fn analyze_schema_for_fixture() {
        let d = decompose_matrix(&fixtures::block_chain_7x7());
        let v = decomposition_json(&d);
        assert_eq!(
            v["blocks"],
            serde_json::json!([[1, 2, 3], [2, 4, 5, 6], [6, 7]])
        );
        assert_eq!(v["cut_vertices"], serde_json::json!([2, 6]));
        assert_eq!(v["cut_indices"], serde_json::json!([[2, 2], [6, 2]]));
        assert_eq!(v["size_identity_check"], serde_json::json!(true));
    }

    #[test]
    fn digest_is_stable() {
        let a = value_digest(&Scalar::from_i64(12345));
        let b = value_digest(&Scalar::from_i64(12345));
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        assert_ne!(a, value_digest(&Scalar::from_i64(-12345)));
    }
}
