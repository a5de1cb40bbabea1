//! The `hecomp` command line: one subcommand per pipeline stage.
//!
//! Every file starts with `HEC1`, a version byte and a kind byte, followed by
//! the parameter-set label and a kind-specific body.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::rngs::OsRng;

use crate::ahe::{AdditiveHe, PaillierKeypair, PaillierPublicKey, DEFAULT_KEY_BITS};
use crate::bench::run_benchmark;
use crate::codec::{put_bytes, put_str, put_u32, put_uint, read_envelope, write_envelope, FileKind, Reader};
use crate::compression::{
    check_compatibility, encrypt_lwe_key, encrypt_rlwe_key, lwe_compress, lwe_compress_batch,
    modified_decrypt_batch, rlwe_compress, rlwe_compress_batch, worst_case_value, CompressedCiphertext,
    EncryptedSecretKey,
};
use crate::error::{Error, Result};
use crate::lwe::{self, LweCiphertext, LweSecretKey, SeededLweCiphertext};
use crate::math::{Polynomial, Seed};
use crate::params::{ParamEntry, ParamSet, Registry};
use crate::process::{lwe_weighted_sum, rlwe_weighted_sum};
use crate::protocol::{send_request, Request, Server, SessionConfig};
use crate::rlwe::{self, RlweCiphertext, RlweSecretKey, SeededRlweCiphertext};
use crate::scheme::{LatticeParams, SchemeTag};

#[derive(Parser, Debug)]
#[command(name = "hecomp", version, about = "LWE/RLWE ciphertext compression with Paillier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Lwe,
    Rlwe,
}

impl From<SchemeArg> for SchemeTag {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Lwe => SchemeTag::Lwe,
            SchemeArg::Rlwe => SchemeTag::Rlwe,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a lattice secret key and a Paillier key pair.
    Keygen {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = DEFAULT_KEY_BITS)]
        ahe_bits: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt the lattice secret key under the Paillier key (evaluation key).
    EncKey {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt messages: each value is an LWE ciphertext; each `--mu` list is
    /// one RLWE ciphertext's coefficients.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long, required = true)]
        mu: Vec<String>,
        #[arg(long)]
        seeded: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Weighted sum of ciphertexts, e.g. `--weights 0:3,2:1`.
    Process {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compress ciphertexts with the evaluation key.
    Compress {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// RLWE coefficient indices to extract.
        #[arg(long, default_value = "0")]
        coeffs: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt lattice or compressed ciphertexts; prints one line per value.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Only these RLWE coefficients (all if omitted).
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Size tables (and optional timings) for parameter sets or groups.
    Bench {
        #[arg(long, default_value = "table1,table2")]
        sets: String,
        #[arg(long, default_value_t = DEFAULT_KEY_BITS)]
        ahe_bits: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the compression server.
    Serve {
        #[arg(long, default_value = "127.0.0.1:7878")]
        bind: String,
    },
    /// Run one client session against a server.
    Request {
        #[arg(long)]
        connect: String,
        #[arg(long)]
        key: PathBuf,
        #[arg(long, required = true)]
        mu: Vec<String>,
        #[arg(long)]
        weights: String,
        #[arg(long, default_value = "0")]
        coeffs: String,
        /// Skip the key upload when the server already holds it.
        #[arg(long)]
        no_upload: bool,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Incompatible(_) => 3,
        _ => 1,
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::param(format!("bad {what} {t:?}"))))
        .collect()
}

pub fn parse_weights(s: &str) -> Result<Vec<(u32, u64)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (i, w) = t
                .split_once(':')
                .ok_or_else(|| Error::param(format!("weight {t:?} is not index:weight")))?;
            let i = i.parse().map_err(|_| Error::param(format!("bad index in {t:?}")))?;
            let w = w.parse().map_err(|_| Error::param(format!("bad weight in {t:?}")))?;
            Ok((i, w))
        })
        .collect()
}

fn write_file(path: &Path, kind: FileKind, body: &[u8]) -> Result<()> {
    fs::write(path, write_envelope(kind, body))?;
    Ok(())
}

fn read_file(path: &Path) -> Result<(FileKind, Vec<u8>)> {
    let bytes = fs::read(path)?;
    let (kind, body) = read_envelope(&bytes)?;
    Ok((kind, body.to_vec()))
}

fn expect_kind(path: &Path, want: FileKind) -> Result<Vec<u8>> {
    let (kind, body) = read_file(path)?;
    if kind != want {
        return Err(Error::format(format!(
            "{} holds {kind:?}, expected {want:?}",
            path.display()
        )));
    }
    Ok(body)
}

enum LatticeKey {
    Lwe(LweSecretKey),
    Rlwe(RlweSecretKey),
}

/// Everything the client keeps private.
struct ClientSecret {
    entry: ParamEntry,
    params: ParamSet,
    lattice: LatticeKey,
    paillier: PaillierKeypair,
}

impl ClientSecret {
    fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        put_str(&mut out, &self.entry.label);
        let (coeffs, width) = match (&self.lattice, &self.params) {
            (LatticeKey::Lwe(sk), ParamSet::Lwe(p)) => (sk.coeffs(), p.modulus().residue_bytes()),
            (LatticeKey::Rlwe(sk), ParamSet::Rlwe(p)) => (sk.coeffs(), p.modulus().residue_bytes()),
            _ => unreachable!("key and parameters share a scheme"),
        };
        put_u32(&mut out, coeffs.len() as u32);
        for &c in coeffs {
            put_uint(&mut out, c, width);
        }
        put_bytes(&mut out, &self.paillier.to_bytes());
        out
    }

    fn load(path: &Path) -> Result<Self> {
        let body = expect_kind(path, FileKind::ClientSecret)?;
        let mut r = Reader::new(&body);
        let entry = Registry::shipped().get(&r.string()?)?.clone();
        let params = entry.build()?;
        let q = *params.as_lattice().modulus();
        let count = r.u32()? as usize;
        if count != params.as_lattice().dimension() {
            return Err(Error::format("secret key length does not match its parameter set"));
        }
        let coeffs = (0..count)
            .map(|_| r.uint(q.residue_bytes()))
            .collect::<Result<Vec<_>>>()?;
        let paillier = PaillierKeypair::from_bytes(r.bytes()?)?;
        r.finish()?;
        let lattice = match &params {
            ParamSet::Lwe(p) => LatticeKey::Lwe(LweSecretKey::from_coeffs(coeffs, p)?),
            ParamSet::Rlwe(p) => LatticeKey::Rlwe(RlweSecretKey::from_poly(Polynomial::new(coeffs, &q)?, p)?),
        };
        Ok(ClientSecret {
            entry,
            params,
            lattice,
            paillier,
        })
    }

    fn encrypted_key(&self) -> Result<Vec<u8>> {
        let mut rng = OsRng;
        Ok(match (&self.lattice, &self.params) {
            (LatticeKey::Lwe(sk), ParamSet::Lwe(p)) => {
                encrypt_lwe_key(&self.paillier, sk, p, &mut rng)?.to_bytes(&self.paillier)
            }
            (LatticeKey::Rlwe(sk), ParamSet::Rlwe(p)) => {
                encrypt_rlwe_key(&self.paillier, sk, p, &mut rng)?.to_bytes(&self.paillier)
            }
            _ => unreachable!("key and parameters share a scheme"),
        })
    }

    /// Seeded encryptions of the `--mu` arguments.
    fn encrypt_seeded(&self, mu: &[String]) -> Result<Vec<Vec<u8>>> {
        let mut rng = OsRng;
        match (&self.lattice, &self.params) {
            (LatticeKey::Lwe(sk), ParamSet::Lwe(p)) => lwe_messages(mu)?
                .into_iter()
                .map(|m| Ok(lwe::encrypt_seeded(sk, m, p, Seed::random(&mut rng), &mut rng)?.to_bytes(p)))
                .collect(),
            (LatticeKey::Rlwe(sk), ParamSet::Rlwe(p)) => mu
                .iter()
                .map(|list| {
                    let m = p.message(&parse_list(list, "coefficient")?)?;
                    Ok(rlwe::encrypt_seeded(sk, &m, p, Seed::random(&mut rng), &mut rng)?.to_bytes(p))
                })
                .collect(),
            _ => unreachable!("key and parameters share a scheme"),
        }
    }
}

fn lwe_messages(mu: &[String]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for list in mu {
        out.extend(parse_list::<u64>(list, "message")?);
    }
    Ok(out)
}

/// Label, count, then fixed-width ciphertexts.
fn ciphertext_body(label: &str, cts: &[Vec<u8>]) -> Vec<u8> {
    let mut out = Vec::new();
    put_str(&mut out, label);
    put_u32(&mut out, cts.len() as u32);
    for ct in cts {
        out.extend_from_slice(ct);
    }
    out
}

enum Ciphertexts {
    Lwe(Vec<LweCiphertext>),
    Rlwe(Vec<RlweCiphertext>),
}

/// Reads any of the four lattice ciphertext file kinds, expanding seeds.
fn load_ciphertexts(kind: FileKind, body: &[u8]) -> Result<(ParamEntry, Ciphertexts)> {
    let mut r = Reader::new(body);
    let entry = Registry::shipped().get(&r.string()?)?.clone();
    let count = r.u32()? as usize;
    let params = entry.build()?;
    let cts = match (kind, &params) {
        (FileKind::LweCiphertexts, ParamSet::Lwe(p)) => Ciphertexts::Lwe(
            (0..count)
                .map(|_| LweCiphertext::from_bytes(r.take(p.ciphertext_bytes())?, p))
                .collect::<Result<_>>()?,
        ),
        (FileKind::SeededLweCiphertexts, ParamSet::Lwe(p)) => Ciphertexts::Lwe(
            (0..count)
                .map(|_| {
                    let s = SeededLweCiphertext::from_bytes(r.take(p.seeded_ciphertext_bytes())?, p)?;
                    Ok(lwe::expand_seeded(&s, p))
                })
                .collect::<Result<_>>()?,
        ),
        (FileKind::RlweCiphertexts, ParamSet::Rlwe(p)) => Ciphertexts::Rlwe(
            (0..count)
                .map(|_| RlweCiphertext::from_bytes(r.take(p.ciphertext_bytes())?, p))
                .collect::<Result<_>>()?,
        ),
        (FileKind::SeededRlweCiphertexts, ParamSet::Rlwe(p)) => Ciphertexts::Rlwe(
            (0..count)
                .map(|_| {
                    let s = SeededRlweCiphertext::from_bytes(r.take(p.seeded_ciphertext_bytes())?, p)?;
                    Ok(rlwe::expand_seeded(&s, p))
                })
                .collect::<Result<_>>()?,
        ),
        _ => return Err(Error::format(format!("{kind:?} is not a ciphertext file for {}", entry.label))),
    };
    r.finish()?;
    Ok((entry, cts))
}

struct EvaluationKey {
    entry: ParamEntry,
    params: ParamSet,
    public: PaillierPublicKey,
    key: EncryptedSecretKey<crate::ahe::PaillierCiphertext>,
}

impl EvaluationKey {
    fn load(path: &Path) -> Result<Self> {
        let body = expect_kind(path, FileKind::EvaluationKey)?;
        let mut r = Reader::new(&body);
        let entry = Registry::shipped().get(&r.string()?)?.clone();
        let params = entry.build()?;
        let public = PaillierPublicKey::from_bytes(r.bytes()?)?;
        let key = EncryptedSecretKey::from_bytes(r.take(r.remaining())?, &public, params.as_lattice())?;
        Ok(EvaluationKey {
            entry,
            params,
            public,
            key,
        })
    }
}

fn execute<W: Write>(command: Command, out: &mut W) -> Result<()> {
    match command {
        Command::Keygen {
            scheme,
            set,
            ahe_bits,
            out: path,
        } => {
            let entry = Registry::shipped().get(&set)?.clone();
            if entry.scheme != SchemeTag::from(scheme) {
                return Err(Error::param(format!("{set} is not a {} set", entry.scheme.name())));
            }
            let params = entry.build()?;
            // The smallest modulus of `ahe_bits` bits is 2^(bits-1).
            let smallest = BigUint::from(1u32) << ahe_bits.saturating_sub(1);
            if !check_compatibility(params.as_lattice(), &smallest) {
                return Err(Error::Incompatible(format!(
                    "{ahe_bits}-bit additive key is too small for {set}: need more than {} bits",
                    worst_case_value(params.as_lattice().modulus(), params.as_lattice().dimension()).bits()
                )));
            }
            let mut rng = OsRng;
            let lattice = match &params {
                ParamSet::Lwe(p) => LatticeKey::Lwe(lwe::keygen(p, &mut rng)),
                ParamSet::Rlwe(p) => LatticeKey::Rlwe(rlwe::keygen(p, &mut rng)),
            };
            let paillier = PaillierKeypair::generate(ahe_bits, &mut rng)?;
            let secret = ClientSecret {
                entry,
                params,
                lattice,
                paillier,
            };
            write_file(&path, FileKind::ClientSecret, &secret.to_bytes())?;
            writeln!(out, "wrote {} key for {set} with {ahe_bits}-bit Paillier to {}", scheme_name(scheme), path.display())?;
        }
        Command::EncKey { key, out: path } => {
            let secret = ClientSecret::load(&key)?;
            let esk = secret.encrypted_key()?;
            let mut body = Vec::new();
            put_str(&mut body, &secret.entry.label);
            put_bytes(&mut body, &secret.paillier.public().to_bytes());
            body.extend_from_slice(&esk);
            write_file(&path, FileKind::EvaluationKey, &body)?;
            writeln!(out, "wrote encrypted key ({} bytes) to {}", esk.len(), path.display())?;
        }
        Command::Encrypt {
            key,
            mu,
            seeded,
            out: path,
        } => {
            let secret = ClientSecret::load(&key)?;
            let cts = if seeded {
                secret.encrypt_seeded(&mu)?
            } else {
                let mut rng = OsRng;
                match (&secret.lattice, &secret.params) {
                    (LatticeKey::Lwe(sk), ParamSet::Lwe(p)) => lwe_messages(&mu)?
                        .into_iter()
                        .map(|m| Ok(lwe::encrypt(sk, m, p, &mut rng)?.to_bytes(p)))
                        .collect::<Result<Vec<_>>>()?,
                    (LatticeKey::Rlwe(sk), ParamSet::Rlwe(p)) => mu
                        .iter()
                        .map(|list| {
                            let m = p.message(&parse_list(list, "coefficient")?)?;
                            Ok(rlwe::encrypt(sk, &m, p, &mut rng)?.to_bytes(p))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    _ => unreachable!("key and parameters share a scheme"),
                }
            };
            let kind = match (secret.entry.scheme, seeded) {
                (SchemeTag::Lwe, false) => FileKind::LweCiphertexts,
                (SchemeTag::Lwe, true) => FileKind::SeededLweCiphertexts,
                (SchemeTag::Rlwe, false) => FileKind::RlweCiphertexts,
                (SchemeTag::Rlwe, true) => FileKind::SeededRlweCiphertexts,
            };
            let bytes: usize = cts.iter().map(Vec::len).sum();
            write_file(&path, kind, &ciphertext_body(&secret.entry.label, &cts))?;
            writeln!(out, "wrote {} ciphertexts ({bytes} bytes) to {}", cts.len(), path.display())?;
        }
        Command::Process {
            input,
            weights,
            out: path,
        } => {
            let (kind, body) = read_file(&input)?;
            let (entry, cts) = load_ciphertexts(kind, &body)?;
            let weights = parse_weights(&weights)?;
            let (kind, ct) = match (cts, entry.build()?) {
                (Ciphertexts::Lwe(cts), ParamSet::Lwe(p)) => {
                    (FileKind::LweCiphertexts, lwe_weighted_sum(&cts, &weights, &p)?.to_bytes(&p))
                }
                (Ciphertexts::Rlwe(cts), ParamSet::Rlwe(p)) => {
                    (FileKind::RlweCiphertexts, rlwe_weighted_sum(&cts, &weights, &p)?.to_bytes(&p))
                }
                _ => unreachable!("ciphertexts were parsed with these parameters"),
            };
            write_file(&path, kind, &ciphertext_body(&entry.label, &[ct]))?;
            writeln!(out, "wrote processed ciphertext to {}", path.display())?;
        }
        Command::Compress {
            key,
            input,
            coeffs,
            out: path,
        } => {
            let ek = EvaluationKey::load(&key)?;
            let (kind, body) = read_file(&input)?;
            let (entry, cts) = load_ciphertexts(kind, &body)?;
            if entry.label != ek.entry.label {
                return Err(Error::param(format!(
                    "ciphertexts are for {}, evaluation key for {}",
                    entry.label, ek.entry.label
                )));
            }
            let compressed = match (cts, &ek.params) {
                (Ciphertexts::Lwe(cts), ParamSet::Lwe(p)) => match cts.as_slice() {
                    [] => return Err(Error::param("no ciphertexts to compress")),
                    [ct] => lwe_compress(&ek.public, &ek.key, ct, p)?,
                    many => lwe_compress_batch(&ek.public, &ek.key, many, p)?,
                },
                (Ciphertexts::Rlwe(cts), ParamSet::Rlwe(p)) => {
                    let [ct] = cts.as_slice() else {
                        return Err(Error::param("RLWE compression takes exactly one ciphertext"));
                    };
                    match parse_list::<usize>(&coeffs, "coefficient index")?.as_slice() {
                        [] => return Err(Error::param("no coefficients requested")),
                        [k] => rlwe_compress(&ek.public, &ek.key, ct, *k, p)?,
                        ks => rlwe_compress_batch(&ek.public, &ek.key, ct, ks, p)?,
                    }
                }
                _ => unreachable!("ciphertexts were parsed with these parameters"),
            };
            let mut body = Vec::new();
            put_str(&mut body, &entry.label);
            body.extend_from_slice(&compressed.to_bytes(&ek.public));
            write_file(&path, FileKind::Compressed, &body)?;
            writeln!(
                out,
                "wrote {}-slot compressed ciphertext ({} byte payload) to {}",
                compressed.layout().slot_count,
                ek.public.ciphertext_len(),
                path.display()
            )?;
        }
        Command::Decrypt { key, input, coeffs } => {
            let secret = ClientSecret::load(&key)?;
            let (kind, body) = read_file(&input)?;
            if kind == FileKind::Compressed {
                let mut r = Reader::new(&body);
                let label = r.string()?;
                check_label(&label, &secret)?;
                let x = CompressedCiphertext::from_bytes(r.take(r.remaining())?, &secret.paillier)?;
                for v in modified_decrypt_batch(&secret.paillier, &x, secret.params.as_lattice())? {
                    writeln!(out, "{v}")?;
                }
                return Ok(());
            }
            let (entry, cts) = load_ciphertexts(kind, &body)?;
            check_label(&entry.label, &secret)?;
            match (cts, &secret.lattice, &secret.params) {
                (Ciphertexts::Lwe(cts), LatticeKey::Lwe(sk), ParamSet::Lwe(p)) => {
                    for ct in &cts {
                        writeln!(out, "{}", lwe::decrypt(sk, ct, p))?;
                    }
                }
                (Ciphertexts::Rlwe(cts), LatticeKey::Rlwe(sk), ParamSet::Rlwe(p)) => {
                    let picks = coeffs.map(|c| parse_list::<usize>(&c, "coefficient index")).transpose()?;
                    for ct in &cts {
                        let full = rlwe::decrypt(sk, ct, p)?;
                        let shown: Vec<String> = match &picks {
                            Some(ks) => ks
                                .iter()
                                .map(|&k| full.get(k).map(u64::to_string).ok_or(Error::Index { index: k, bound: full.len() }))
                                .collect::<Result<_>>()?,
                            None => full.iter().map(u64::to_string).collect(),
                        };
                        writeln!(out, "{}", shown.join(","))?;
                    }
                }
                _ => unreachable!("labels match, so schemes match"),
            }
        }
        Command::Bench {
            sets,
            ahe_bits,
            trials,
            format,
            out: path,
        } => {
            let entries = Registry::shipped().select(&sets)?;
            let report = run_benchmark(&entries, ahe_bits, trials, &mut OsRng)?;
            let text = match format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Machine => report.to_json() + "\n",
            };
            match path {
                Some(p) => {
                    fs::write(&p, &text)?;
                    writeln!(out, "wrote report to {}", p.display())?;
                }
                None => write!(out, "{text}")?,
            }
        }
        Command::Serve { bind } => {
            let server = Server::bind(&bind)?;
            writeln!(out, "listening on {}", server.local_addr()?)?;
            out.flush()?;
            server.run()?;
        }
        Command::Request {
            connect,
            key,
            mu,
            weights,
            coeffs,
            no_upload,
        } => {
            let secret = ClientSecret::load(&key)?;
            let config = SessionConfig {
                scheme: secret.entry.scheme,
                label: secret.entry.label.clone(),
                ahe_public_key: secret.paillier.public().clone(),
                weights: parse_weights(&weights)?,
                extract: match secret.entry.scheme {
                    SchemeTag::Lwe => Vec::new(),
                    SchemeTag::Rlwe => parse_list(&coeffs, "coefficient index")?,
                },
            };
            let request = Request {
                config,
                encrypted_key: if no_upload { None } else { Some(secret.encrypted_key()?) },
                inputs: secret.encrypt_seeded(&mu)?,
            };
            let response = send_request(&connect, &secret.params, &request)?;
            for v in response.decrypt(&secret.paillier, &secret.params)? {
                writeln!(out, "{v}")?;
            }
            writeln!(
                out,
                "request {} bytes, response {} bytes",
                response.request_bytes, response.wire_bytes
            )?;
        }
    }
    Ok(())
}

fn check_label(label: &str, secret: &ClientSecret) -> Result<()> {
    if label != secret.entry.label {
        return Err(Error::param(format!(
            "input is for {label}, key for {}",
            secret.entry.label
        )));
    }
    Ok(())
}

fn scheme_name(s: SchemeArg) -> &'static str {
    SchemeTag::from(s).name()
}
