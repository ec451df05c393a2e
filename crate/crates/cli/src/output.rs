//! Deterministic output: shortest round-trip float formatting, CSV
//! assembly, atomic file writes, and ordered parallel sweeps.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Shortest representation that round-trips to the same f64.
pub fn fmt_f64(x: f64) -> String {
    let mut buf = ryu::Buffer::new();
    buf.format(x).to_string()
}

/// One CSV document: header line plus rows, LF line endings.
pub struct Csv {
    body: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut body = header.join(",");
        body.push('\n');
        Self { body }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.body.push_str(&fields.join(","));
        self.body.push('\n');
    }

    pub fn finish(self) -> String {
        self.body
    }
}

/// Writes to stdout, or atomically (temp file + rename) to `path`, so a
/// failed run never leaves a partial file behind.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .map_err(|e| CliError::Io(format!("cannot write near {}: {e}", path.display())))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| CliError::Io(format!("write failed: {e}")))?;
            tmp.persist(path)
                .map_err(|e| CliError::Io(format!("cannot finalize {}: {e}", path.display())))?;
            Ok(())
        }
    }
}

/// Maps `0..n` through `job` on up to `threads` workers, returning results
/// in index order regardless of scheduling.
pub fn ordered_parallel<T, F>(n: usize, threads: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads <= 1 {
        return (0..n).map(job).collect();
    }
    let chunk = n.div_ceil(threads);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let job = &job;
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(n);
                scope.spawn(move || (lo..hi).map(job).collect::<Vec<T>>())
            })
            .collect();
        for h in handles {
            chunks.push(h.join().expect("sweep worker panicked"));
        }
    });
    chunks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.0, -1.5, 2.0 / 3.0, 6.123233995736766e-17, 1e300] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn parallel_order_is_deterministic() {
        let serial = ordered_parallel(100, 1, |i| i * i);
        let parallel = ordered_parallel(100, 4, |i| i * i);
        assert_eq!(serial, parallel);
    }
}
