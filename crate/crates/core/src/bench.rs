//! Size accounting for the shipped parameter sets, with published reference
//! rows for comparison and optional wall-clock timings.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{CryptoRng, Rng, RngCore};
use serde::Serialize;

use crate::ahe::PaillierKeypair;
use crate::compression::{encrypt_lwe_key, encrypt_rlwe_key, lwe_compress, rlwe_compress};
use crate::error::Result;
use crate::lwe::{self, LweParams};
use crate::params::{ParamEntry, ParamSet};
use crate::rlwe::{self, RlweParams};
use crate::scheme::LatticeParams;

/// Relative tolerance on encrypted-key sizes before a row is flagged.
pub const KEY_SIZE_TOLERANCE: f64 = 0.01;
/// Percentage points of reduction before a row is flagged.
pub const REDUCTION_TOLERANCE_PP: f64 = 3.0;
/// Relative tolerance on uncompressed sizes before a row is flagged.
pub const UNCOMPRESSED_TOLERANCE: f64 = 0.05;

/// A published row. Sizes in decimal kilobytes as printed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceRow {
    pub encrypted_key_kb: f64,
    pub compressed_bytes: usize,
    pub uncompressed_kb: f64,
    pub reduction_percent: f64,
    pub key_encryption_secs: f64,
    pub compression_secs: f64,
}

/// Published reference values for the sets that have them, LWE and RLWE,
/// all at 3072-bit Paillier.
pub fn reference_row(label: &str) -> Option<ReferenceRow> {
    let row = |key, comp, unc, red, kt, ct| ReferenceRow {
        encrypted_key_kb: key,
        compressed_bytes: comp,
        uncompressed_kb: unc,
        reduction_percent: red,
        key_encryption_secs: kt,
        compression_secs: ct,
    };
    Some(match label {
        "n630" => row(483.0, 768, 5.0, 86.0, 28.0, 0.67),
        "n750" => row(575.0, 768, 6.0, 87.2, 33.0, 0.79),
        "N1024" => row(786.0, 767, 2.5, 70.0, 45.0, 0.50),
        "N2048" => row(1572.0, 767, 5.6, 86.36, 90.0, 1.77),
        "N4096" => row(3145.0, 767, 12.3, 93.75, 182.0, 2.52),
        "N8192" => row(6290.0, 767, 26.6, 97.11, 369.0, 5.97),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeReport {
    pub param_label: String,
    pub scheme: String,
    pub dimension: usize,
    pub log2_q: u32,
    pub ahe_bits: u64,
    /// Residues padded to whole bytes, as serialized.
    pub uncompressed_ct_bytes: usize,
    /// Residues packed at `log2 q` bits each.
    pub uncompressed_ct_bytes_bit_packed: usize,
    pub seeded_ct_bytes: usize,
    pub compressed_ct_bytes: usize,
    pub encrypted_key_bytes: usize,
    pub reduction_percent: f64,
    pub reduction_percent_bit_packed: f64,
    pub paper_reference_values: Option<ReferenceRow>,
    pub discrepancies: Vec<String>,
}

fn reduction(compressed: usize, uncompressed: usize) -> f64 {
    100.0 * (1.0 - compressed as f64 / uncompressed as f64)
}

/// `2 ceil(bits / 8)`, the serialized size of one Paillier ciphertext.
pub fn paillier_ciphertext_bytes(ahe_bits: u64) -> usize {
    2 * ahe_bits.div_ceil(8) as usize
}

fn build_report(
    label: &str,
    params: &dyn LatticeParams,
    uncompressed: usize,
    packed: usize,
    seeded: usize,
    ahe_bits: u64,
) -> SizeReport {
    let compressed = paillier_ciphertext_bytes(ahe_bits);
    let mut report = SizeReport {
        param_label: label.to_string(),
        scheme: params.scheme().name().to_string(),
        dimension: params.dimension(),
        log2_q: params.modulus().bits(),
        ahe_bits,
        uncompressed_ct_bytes: uncompressed,
        uncompressed_ct_bytes_bit_packed: packed,
        seeded_ct_bytes: seeded,
        compressed_ct_bytes: compressed,
        encrypted_key_bytes: params.dimension() * compressed,
        reduction_percent: reduction(compressed, uncompressed),
        reduction_percent_bit_packed: reduction(compressed, packed),
        paper_reference_values: None,
        discrepancies: Vec::new(),
    };
    if ahe_bits == 3072 {
        if let Some(row) = reference_row(label) {
            report.discrepancies = discrepancies(&report, &row);
            report.paper_reference_values = Some(row);
        }
    }
    report
}

fn discrepancies(r: &SizeReport, row: &ReferenceRow) -> Vec<String> {
    let mut out = Vec::new();
    let key_kb = r.encrypted_key_bytes as f64 / 1000.0;
    if (key_kb - row.encrypted_key_kb).abs() > KEY_SIZE_TOLERANCE * row.encrypted_key_kb {
        out.push(format!(
            "encrypted key: {} vs published {} KB",
            kb(r.encrypted_key_bytes),
            row.encrypted_key_kb
        ));
    }
    if r.compressed_ct_bytes != row.compressed_bytes {
        out.push(format!(
            "compressed ciphertext: {} B vs published {} B",
            r.compressed_ct_bytes, row.compressed_bytes
        ));
    }
    let unc_kb = r.uncompressed_ct_bytes as f64 / 1000.0;
    if (unc_kb - row.uncompressed_kb).abs() > UNCOMPRESSED_TOLERANCE * row.uncompressed_kb {
        out.push(format!(
            "uncompressed ciphertext: {} vs published {} KB",
            kb(r.uncompressed_ct_bytes),
            row.uncompressed_kb
        ));
    }
    if (r.reduction_percent - row.reduction_percent).abs() > REDUCTION_TOLERANCE_PP {
        out.push(format!(
            "size reduction: {:.2}% vs published {}%",
            r.reduction_percent, row.reduction_percent
        ));
    }
    out
}

pub fn size_report_lwe(label: &str, params: &LweParams, ahe_bits: u64) -> SizeReport {
    let n = params.dimension();
    let packed = ((n + 1) * params.log2_q() as usize).div_ceil(8);
    build_report(
        label,
        params,
        params.ciphertext_bytes(),
        packed,
        params.seeded_ciphertext_bytes(),
        ahe_bits,
    )
}

pub fn size_report_rlwe(label: &str, params: &RlweParams, ahe_bits: u64) -> SizeReport {
    let n = params.degree();
    let packed = (2 * n * params.log2_q() as usize).div_ceil(8);
    build_report(
        label,
        params,
        params.ciphertext_bytes(),
        packed,
        params.seeded_ciphertext_bytes(),
        ahe_bits,
    )
}

pub fn size_report(entry: &ParamEntry, ahe_bits: u64) -> Result<SizeReport> {
    Ok(match entry.build()? {
        ParamSet::Lwe(p) => size_report_lwe(&entry.label, &p, ahe_bits),
        ParamSet::Rlwe(p) => size_report_rlwe(&entry.label, &p, ahe_bits),
    })
}

/// Median wall-clock times over the measured trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub trials: usize,
    pub key_encryption_secs: f64,
    pub compression_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub sizes: SizeReport,
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub ahe_bits: u64,
    pub rows: Vec<BenchRow>,
}

fn median(mut xs: Vec<Duration>) -> f64 {
    xs.sort();
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid].as_secs_f64()
    } else {
        (xs[mid - 1] + xs[mid]).as_secs_f64() / 2.0
    }
}

fn time<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed()))
}

fn time_lwe<R: RngCore + CryptoRng>(
    kp: &PaillierKeypair,
    params: &LweParams,
    trials: usize,
    rng: &mut R,
) -> Result<Timing> {
    let (mut key_times, mut comp_times) = (Vec::new(), Vec::new());
    for _ in 0..trials {
        let sk = lwe::keygen(params, rng);
        let (esk, t) = time(|| encrypt_lwe_key(kp, &sk, params, rng))?;
        key_times.push(t);
        let mu = rng.gen_range(0..params.plaintext_modulus());
        let ct = lwe::encrypt(&sk, mu, params, rng)?;
        comp_times.push(time(|| lwe_compress(kp.public(), &esk, &ct, params))?.1);
    }
    Ok(Timing {
        trials,
        key_encryption_secs: median(key_times),
        compression_secs: median(comp_times),
    })
}

fn time_rlwe<R: RngCore + CryptoRng>(
    kp: &PaillierKeypair,
    params: &RlweParams,
    trials: usize,
    rng: &mut R,
) -> Result<Timing> {
    let (mut key_times, mut comp_times) = (Vec::new(), Vec::new());
    for _ in 0..trials {
        let sk = rlwe::keygen(params, rng);
        let (esk, t) = time(|| encrypt_rlwe_key(kp, &sk, params, rng))?;
        key_times.push(t);
        let coeffs: Vec<u64> = (0..params.degree())
            .map(|_| rng.gen_range(0..params.plaintext_modulus()))
            .collect();
        let ct = rlwe::encrypt(&sk, &params.message(&coeffs)?, params, rng)?;
        let k = rng.gen_range(0..params.degree());
        comp_times.push(time(|| rlwe_compress(kp.public(), &esk, &ct, k, params))?.1);
    }
    Ok(Timing {
        trials,
        key_encryption_secs: median(key_times),
        compression_secs: median(comp_times),
    })
}

/// Size rows for every entry; with `timing_trials`, also times key encryption
/// and one compression per set under a fresh `ahe_bits` Paillier key.
pub fn run_benchmark<R: RngCore + CryptoRng>(
    entries: &[&ParamEntry],
    ahe_bits: u64,
    timing_trials: Option<usize>,
    rng: &mut R,
) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(entries.len());
    let trials = timing_trials.filter(|&t| t > 0 && !entries.is_empty());
    let kp = match trials {
        Some(_) => Some(PaillierKeypair::generate(ahe_bits, rng)?),
        None => None,
    };
    for entry in entries {
        let sizes = size_report(entry, ahe_bits)?;
        let timing = match (&kp, trials) {
            (Some(kp), Some(t)) => Some(match entry.build()? {
                ParamSet::Lwe(p) => time_lwe(kp, &p, t, rng)?,
                ParamSet::Rlwe(p) => time_rlwe(kp, &p, t, rng)?,
            }),
            _ => None,
        };
        rows.push(BenchRow { sizes, timing });
    }
    Ok(BenchReport { ahe_bits, rows })
}

/// Decimal kilobytes, as the published tables print them.
pub fn kb(bytes: usize) -> String {
    format!("{:.1} KB", bytes as f64 / 1000.0)
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "additive key: {}-bit Paillier", self.ahe_bits);
        let _ = writeln!(
            out,
            "{:<10} {:>12} {:>10} {:>10} {:>12} {:>10} {:>12}",
            "set", "uncompressed", "seeded", "compressed", "enc. key", "reduction", "bit-packed"
        );
        for row in &self.rows {
            let s = &row.sizes;
            let _ = writeln!(
                out,
                "{:<10} {:>12} {:>10} {:>10} {:>12} {:>9.2}% {:>11.2}%",
                s.param_label,
                kb(s.uncompressed_ct_bytes),
                format!("{} B", s.seeded_ct_bytes),
                format!("{} B", s.compressed_ct_bytes),
                kb(s.encrypted_key_bytes),
                s.reduction_percent,
                s.reduction_percent_bit_packed,
            );
            if let Some(p) = &s.paper_reference_values {
                let _ = writeln!(
                    out,
                    "{:<10} {:>12} {:>10} {:>10} {:>12} {:>9}% {:>12}",
                    "  published",
                    format!("{} KB", p.uncompressed_kb),
                    "-",
                    format!("{} B", p.compressed_bytes),
                    format!("{} KB", p.encrypted_key_kb),
                    p.reduction_percent,
                    "",
                );
            }
            if let Some(t) = &row.timing {
                let _ = writeln!(
                    out,
                    "  timing (median of {}): key encryption {:.3} s, compression {:.3} s",
                    t.trials, t.key_encryption_secs, t.compression_secs
                );
                if let Some(p) = &s.paper_reference_values {
                    let _ = writeln!(
                        out,
                        "  published timing: key encryption {} s, compression {} s",
                        p.key_encryption_secs, p.compression_secs
                    );
                }
            }
            for d in &s.discrepancies {
                let _ = writeln!(out, "  ! {d}");
            }
        }
        out
    }
}
