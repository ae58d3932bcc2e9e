use anyhow::{bail, Result};
use matgen_core::primes::is_prime;

/// Smallest enumeration cap accepted on the command line.
pub const MIN_CAP: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Human,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub threads: usize,
    pub prime_sample: Vec<u64>,
    pub enumeration_cap: u64,
    pub output: Output,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(
        threads: Option<usize>,
        prime_sample: Vec<u64>,
        enumeration_cap: u64,
        json: bool,
        seed: u64,
    ) -> Result<Self> {
        if enumeration_cap < MIN_CAP {
            bail!("enumeration cap {enumeration_cap} is below {MIN_CAP}");
        }
        if let Some(p) = prime_sample.iter().find(|&&p| !is_prime(p)) {
            bail!("prime sample entry {p} is not prime");
        }
        if prime_sample.is_empty() {
            bail!("prime sample is empty");
        }
        let threads = match threads {
            Some(0) => bail!("thread count must be positive"),
            Some(t) => t,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(RunConfig {
            threads,
            prime_sample,
            enumeration_cap,
            output: if json { Output::Json } else { Output::Human },
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::new(Some(2), vec![2, 3, 5], 1 << 26, false, 0).is_ok());
        assert!(RunConfig::new(Some(2), vec![2, 4], 1 << 26, false, 0).is_err());
        assert!(RunConfig::new(Some(2), vec![2], 100, false, 0).is_err());
        assert!(RunConfig::new(Some(0), vec![2], 1 << 20, false, 0).is_err());
        assert!(
            RunConfig::new(None, vec![2], 1 << 20, true, 0)
                .unwrap()
                .threads
                >= 1
        );
    }
}
