//! Realizes an array as an `F`-division caching scheme over concrete
//! bytes: placement fills each user's cache with the starred packet
//! rows of every file, delivery broadcasts one XOR per symbol, and
//! decoding cancels cached packets out of each signal.
//!
//! These functions are mechanical: they do not validate the array.
//! Decoding is guaranteed to reconstruct every demanded file only for
//! arrays that pass [`crate::validate::validate`]; the demand sweep
//! exists to exercise exactly that guarantee (and to watch it break on
//! corrupted arrays).

use crate::grid::{Entry, Pda};
use crate::{Int, Rational};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("library has {lib} packets per file but the array has {rows} rows")]
    DimensionMismatch { lib: usize, rows: usize },
    #[error("demand vector has {got} entries, expected {expected}")]
    DemandLength { got: usize, expected: usize },
    #[error("demand {demand} out of range: library has {n_files} files")]
    DemandOutOfRange { demand: usize, n_files: usize },
    #[error("exhaustive sweep of {demands} demand vectors exceeds the limit of {limit}")]
    SweepTooLarge { demands: u128, limit: u64 },
    #[error("symbol {symbol} exceeds the {cells}-cell grid's possible alphabet")]
    SymbolOutOfRange { symbol: u32, cells: usize },
}

/// Why a user failed to reconstruct its file.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DecodeFailure {
    #[error("user {user} lacks cached packet (file {file}, packet {packet})")]
    MissingCachedPacket {
        user: usize,
        file: usize,
        packet: usize,
    },
    #[error("user {user} needs slot {slot} but the transcript has only {slots} slots")]
    MissingSlot {
        user: usize,
        slot: u32,
        slots: usize,
    },
}

/// `N` files of `F` equal packets of `B` bytes each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FileLibrary {
    n_files: usize,
    packets_per_file: usize,
    packet_len: usize,
    data: Vec<u8>,
}

impl FileLibrary {
    /// Deterministic pseudo-random contents from a seed.
    pub fn random(n_files: usize, packets_per_file: usize, packet_len: usize, seed: u64) -> Self {
        assert!(n_files >= 1 && packets_per_file >= 1 && packet_len >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = vec![0u8; n_files * packets_per_file * packet_len];
        rng.fill_bytes(&mut data);
        FileLibrary {
            n_files,
            packets_per_file,
            packet_len,
            data,
        }
    }

    pub fn n_files(&self) -> usize {
        self.n_files
    }

    pub fn packets_per_file(&self) -> usize {
        self.packets_per_file
    }

    pub fn packet_len(&self) -> usize {
        self.packet_len
    }

    pub fn packet(&self, file: usize, packet: usize) -> &[u8] {
        let start = (file * self.packets_per_file + packet) * self.packet_len;
        &self.data[start..start + self.packet_len]
    }

    /// The whole file, packets concatenated in order.
    pub fn file_bytes(&self, file: usize) -> Vec<u8> {
        let start = file * self.packets_per_file * self.packet_len;
        self.data[start..start + self.packets_per_file * self.packet_len].to_vec()
    }
}

/// A request vector: user `k` demands file `d[k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DemandVector(Vec<usize>);

impl DemandVector {
    pub fn new(d: Vec<usize>, users: usize, n_files: usize) -> Result<Self, SimError> {
        if d.len() != users {
            return Err(SimError::DemandLength {
                got: d.len(),
                expected: users,
            });
        }
        if let Some(&demand) = d.iter().find(|&&x| x >= n_files) {
            return Err(SimError::DemandOutOfRange { demand, n_files });
        }
        Ok(DemandVector(d))
    }

    pub fn get(&self, user: usize) -> usize {
        self.0[user]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Per-user cached packets: `(file, packet) -> bytes`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CacheContents {
    users: Vec<BTreeMap<(usize, usize), Vec<u8>>>,
}

impl CacheContents {
    pub fn users(&self) -> usize {
        self.users.len()
    }

    /// Number of packets user `k` holds.
    pub fn packets_cached(&self, user: usize) -> usize {
        self.users[user].len()
    }

    /// Packet indices of one file cached by a user (same for every
    /// file by construction).
    pub fn rows_cached(&self, user: usize, file: usize) -> Vec<usize> {
        self.users[user]
            .keys()
            .filter(|(f, _)| *f == file)
            .map(|&(_, j)| j)
            .collect()
    }

    fn lookup(&self, user: usize, file: usize, packet: usize) -> Option<&[u8]> {
        self.users[user].get(&(file, packet)).map(Vec::as_slice)
    }
}

/// Fills caches: user `k` stores packet row `j` of every file exactly
/// when cell `(j, k)` is a star.
pub fn place(p: &Pda, lib: &FileLibrary) -> Result<CacheContents, SimError> {
    if lib.packets_per_file() != p.rows() {
        return Err(SimError::DimensionMismatch {
            lib: lib.packets_per_file(),
            rows: p.rows(),
        });
    }
    let users = (0..p.cols())
        .map(|k| {
            let mut cache = BTreeMap::new();
            for j in 0..p.rows() {
                if p.entry(j, k).is_star() {
                    for i in 0..lib.n_files() {
                        cache.insert((i, j), lib.packet(i, j).to_vec());
                    }
                }
            }
            cache
        })
        .collect();
    Ok(CacheContents { users })
}

/// One packet's part in a broadcast slot: user `user` will recover
/// packet `packet` of file `file` from this slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Contribution {
    pub user: usize,
    pub file: usize,
    pub packet: usize,
}

/// One broadcast slot: the XOR of its contributors' packets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signal {
    pub symbol: u32,
    pub contributors: Vec<Contribution>,
    pub payload: Vec<u8>,
}

/// Everything the server sent for one demand vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimulationTranscript {
    pub signals: Vec<Signal>,
    rows: usize,
}

impl SimulationTranscript {
    /// Broadcast slots sent; equals `S` for a valid array.
    pub fn delivered_packet_count(&self) -> usize {
        self.signals.len()
    }

    /// Achieved rate `S / F`, exact.
    pub fn rate_achieved(&self) -> Rational {
        Rational::new(Int::from(self.signals.len()), Int::from(self.rows))
    }
}

fn xor_into(acc: &mut [u8], packet: &[u8]) {
    for (a, b) in acc.iter_mut().zip(packet) {
        *a ^= b;
    }
}

/// Broadcasts slot `s` = XOR of `W(d_k, j)` over all cells `(j, k)`
/// holding symbol `s`, for `s` in `0..S`. Contributors are recorded in
/// column order.
pub fn deliver(
    p: &Pda,
    lib: &FileLibrary,
    d: &DemandVector,
) -> Result<SimulationTranscript, SimError> {
    if lib.packets_per_file() != p.rows() {
        return Err(SimError::DimensionMismatch {
            lib: lib.packets_per_file(),
            rows: p.rows(),
        });
    }
    if d.as_slice().len() != p.cols() {
        return Err(SimError::DemandLength {
            got: d.as_slice().len(),
            expected: p.cols(),
        });
    }
    let s_count = p
        .symbol_cells()
        .map(|(_, _, s)| s as usize + 1)
        .max()
        .unwrap_or(0);
    // A gap-free alphabet never extends past the symbol cell count, so
    // anything bigger is a junk grid; refuse rather than allocate S
    // slots for it.
    if s_count > p.symbol_count() {
        let symbol = p.symbol_cells().map(|(_, _, s)| s).max().unwrap_or(0);
        return Err(SimError::SymbolOutOfRange {
            symbol,
            cells: p.rows() * p.cols(),
        });
    }
    let mut signals: Vec<Signal> = (0..s_count)
        .map(|s| Signal {
            symbol: s as u32,
            contributors: Vec::new(),
            payload: vec![0u8; lib.packet_len()],
        })
        .collect();
    for k in 0..p.cols() {
        for j in 0..p.rows() {
            if let Entry::Symbol(s) = p.entry(j, k) {
                let file = d.get(k);
                signals[s as usize].contributors.push(Contribution {
                    user: k,
                    file,
                    packet: j,
                });
                xor_into(&mut signals[s as usize].payload, lib.packet(file, j));
            }
        }
    }
    Ok(SimulationTranscript {
        signals,
        rows: p.rows(),
    })
}

/// Reconstructs one user's demanded file from its cache and the
/// broadcast signals. For each symbol cell `(j, k)` the user XORs the
/// slot with its cached copies of all other contributing packets;
/// condition C1-b is exactly what makes those copies cached.
pub fn decode_user(
    p: &Pda,
    caches: &CacheContents,
    transcript: &SimulationTranscript,
    d: &DemandVector,
    k: usize,
) -> Result<Vec<u8>, DecodeFailure> {
    let want = d.get(k);
    let mut file = Vec::new();
    for j in 0..p.rows() {
        match p.entry(j, k) {
            Entry::Star => {
                let bytes =
                    caches
                        .lookup(k, want, j)
                        .ok_or(DecodeFailure::MissingCachedPacket {
                            user: k,
                            file: want,
                            packet: j,
                        })?;
                file.extend_from_slice(bytes);
            }
            Entry::Symbol(s) => {
                let signal =
                    transcript
                        .signals
                        .get(s as usize)
                        .ok_or(DecodeFailure::MissingSlot {
                            user: k,
                            slot: s,
                            slots: transcript.signals.len(),
                        })?;
                let mut packet = signal.payload.clone();
                for c in &signal.contributors {
                    if c.user == k && c.packet == j {
                        continue;
                    }
                    let bytes = caches.lookup(k, c.file, c.packet).ok_or(
                        DecodeFailure::MissingCachedPacket {
                            user: k,
                            file: c.file,
                            packet: c.packet,
                        },
                    )?;
                    xor_into(&mut packet, bytes);
                }
                file.extend_from_slice(&packet);
            }
        }
    }
    Ok(file)
}

/// [`decode_user`] for every user; fails on the first defect.
pub fn decode(
    p: &Pda,
    caches: &CacheContents,
    transcript: &SimulationTranscript,
    d: &DemandVector,
) -> Result<Vec<Vec<u8>>, DecodeFailure> {
    (0..p.cols())
        .map(|k| decode_user(p, caches, transcript, d, k))
        .collect()
}

/// One demand end to end: the transcript plus a per-user verdict of
/// whether the reconstruction equals the library file byte-for-byte.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeRun {
    pub transcript: SimulationTranscript,
    pub user_ok: Vec<bool>,
}

impl SchemeRun {
    pub fn all_ok(&self) -> bool {
        self.user_ok.iter().all(|&ok| ok)
    }
}

pub fn run_demand(
    p: &Pda,
    lib: &FileLibrary,
    caches: &CacheContents,
    d: &DemandVector,
) -> Result<SchemeRun, SimError> {
    let transcript = deliver(p, lib, d)?;
    let user_ok = (0..p.cols())
        .map(|k| {
            decode_user(p, caches, &transcript, d, k)
                .is_ok_and(|got| got == lib.file_bytes(d.get(k)))
        })
        .collect();
    Ok(SchemeRun {
        transcript,
        user_ok,
    })
}

/// How demand vectors are chosen for a sweep.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Seed for the pseudo-random file library.
    pub lib_seed: u64,
    pub packet_len: usize,
    /// Refuse exhaustive sweeps with more demand vectors than this.
    pub max_exhaustive: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            mode: SweepMode::Exhaustive,
            lib_seed: 0xC0DE,
            packet_len: 64,
            max_exhaustive: 4096,
        }
    }
}

/// One demand vector for which some user failed to get its file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SweepProblem {
    Decode {
        demand: Vec<usize>,
        failure: DecodeFailure,
    },
    WrongBytes {
        demand: Vec<usize>,
        user: usize,
    },
}

#[derive(Clone, PartialEq, Debug)]
pub struct SweepSummary {
    pub demands_run: u64,
    pub failures: Vec<SweepProblem>,
    /// Broadcast slots per demand (constant across demands).
    pub signals_per_demand: usize,
    /// Achieved rate `S / F`, exact.
    pub rate: Rational,
}

impl SweepSummary {
    pub fn all_decoded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs place/deliver/decode over all (or sampled) demand vectors
/// against one fixed pseudo-random library and compares every
/// reconstruction byte-for-byte.
pub fn demand_sweep(p: &Pda, n_files: usize, cfg: &SweepConfig) -> Result<SweepSummary, SimError> {
    let lib = FileLibrary::random(n_files, p.rows(), cfg.packet_len, cfg.lib_seed);
    let caches = place(p, &lib)?;
    let users = p.cols();

    let mut failures = Vec::new();
    let mut demands_run = 0u64;
    let mut signals_per_demand = 0usize;
    let mut check = |d: Vec<usize>| -> Result<(), SimError> {
        let demand = DemandVector::new(d, users, n_files)?;
        let transcript = deliver(p, &lib, &demand)?;
        signals_per_demand = transcript.signals.len();
        match decode(p, &caches, &transcript, &demand) {
            Ok(files) => {
                for (user, got) in files.iter().enumerate() {
                    if got != &lib.file_bytes(demand.get(user)) {
                        failures.push(SweepProblem::WrongBytes {
                            demand: demand.as_slice().to_vec(),
                            user,
                        });
                    }
                }
            }
            Err(failure) => failures.push(SweepProblem::Decode {
                demand: demand.as_slice().to_vec(),
                failure,
            }),
        }
        demands_run += 1;
        Ok(())
    };

    match cfg.mode {
        SweepMode::Exhaustive => {
            let total = (n_files as u128)
                .checked_pow(users as u32)
                .unwrap_or(u128::MAX);
            if total > cfg.max_exhaustive as u128 {
                return Err(SimError::SweepTooLarge {
                    demands: total,
                    limit: cfg.max_exhaustive,
                });
            }
            let mut d = vec![0usize; users];
            loop {
                check(d.clone())?;
                // Odometer over [0, n_files)^users.
                let mut i = 0;
                while i < users {
                    d[i] += 1;
                    if d[i] < n_files {
                        break;
                    }
                    d[i] = 0;
                    i += 1;
                }
                if i == users {
                    break;
                }
            }
        }
        SweepMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let d: Vec<usize> = (0..users)
                    .map(|_| (rng.next_u64() % n_files as u64) as usize)
                    .collect();
                check(d)?;
            }
        }
    }

    let rate = Rational::new(Int::from(signals_per_demand), Int::from(p.rows()));
    Ok(SweepSummary {
        demands_run,
        failures,
        signals_per_demand,
        rate,
    })
}
