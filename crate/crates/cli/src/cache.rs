//! On-disk caching of sieves and zero tables.
//!
//! Mangoldt tables are stored in the flat binary format (8-byte LE limit
//! header, then 8-byte LE values); zero tables as plain-text ordinates in
//! `%.17e`, which round-trips f64 exactly, so warm and cold runs produce
//! bit-identical downstream output. Cache keys encode every parameter
//! (limit, conductor, character index, height); a file that exists but
//! fails to parse is invalidated, logged to stderr, and rebuilt.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use goldbach::characters::{build_group, conductor_and_primitive};
use goldbach::error::Result;
use goldbach::mangoldt::{sieve_mangoldt, MangoldtTable};
use goldbach::theorem::GroupZeros;
use goldbach::zeros::{find_critical_zeros, parse_zero_table, scan_real_zeros, ZeroSet};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Flag > GOLDBACH_CACHE_DIR > ./.goldbach-cache.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os("GOLDBACH_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".goldbach-cache"));
        Cache { dir }
    }

    fn ensure_dir(&self) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        Ok(())
    }

    pub fn mangoldt(&self, limit: u64) -> Result<MangoldtTable> {
        let path = self.dir.join(format!("mangoldt_{limit}.bin"));
        if path.exists() {
            match fs::File::open(&path).map_err(goldbach::Error::from).and_then(|f| {
                MangoldtTable::read_binary(std::io::BufReader::new(f))
            }) {
                Ok(table) if table.limit() == limit => {
                    eprintln!("# cache hit: {}", path.display());
                    return Ok(table);
                }
                Ok(table) => {
                    eprintln!(
                        "# cache invalidated: {} holds limit {}, need {limit}",
                        path.display(),
                        table.limit()
                    );
                }
                Err(e) => {
                    eprintln!("# cache invalidated: {} unreadable ({e})", path.display());
                }
            }
        }
        let table = sieve_mangoldt(limit)?;
        self.ensure_dir()?;
        let mut f = std::io::BufWriter::new(fs::File::create(&path)?);
        table.write_binary(&mut f)?;
        f.flush()?;
        eprintln!("# cached {}", path.display());
        Ok(table)
    }

    fn zero_set(
        &self,
        star: &goldbach::DirichletCharacter,
        height: f64,
        recertify: bool,
    ) -> Result<ZeroSet> {
        let path = self.dir.join(format!(
            "zeros_q{}_c{}_T{height}.txt",
            star.modulus(),
            star.index()
        ));
        if path.exists() {
            match fs::read_to_string(&path)
                .map_err(goldbach::Error::from)
                .and_then(|text| parse_zero_table(&text, star, recertify))
            {
                Ok(mut set) => {
                    eprintln!("# cache hit: {}", path.display());
                    set.height_bound = height;
                    if star.is_real() {
                        set.real_zeros = scan_real_zeros(star, 2000)?;
                    }
                    return Ok(set);
                }
                Err(e) => {
                    eprintln!("# cache invalidated: {} rejected ({e})", path.display());
                }
            }
        }
        let set = find_critical_zeros(star, height)?;
        self.ensure_dir()?;
        let mut f = std::io::BufWriter::new(fs::File::create(&path)?);
        writeln!(f, "# goldbach zero table")?;
        writeln!(
            f,
            "# modulus {} character {} height {height} count {}",
            star.modulus(),
            star.label(),
            set.zeros.len()
        )?;
        for z in &set.zeros {
            writeln!(f, "{:.17e}", z.ordinate)?;
        }
        f.flush()?;
        eprintln!("# cached {}", path.display());
        Ok(set)
    }

    /// Zero sets for every character mod q, resolved and cached at the
    /// primitive level.
    pub fn group_zeros(&self, q: u64, height: f64, recertify: bool) -> Result<GroupZeros> {
        let group = build_group(q)?;
        let mut resolved: BTreeMap<(u64, usize), Arc<ZeroSet>> = BTreeMap::new();
        let mut sets = Vec::with_capacity(group.characters().len());
        for chi in group.characters() {
            let (qstar, star) = conductor_and_primitive(chi)?;
            let key = (qstar, star.index());
            let set = match resolved.get(&key) {
                Some(s) => Arc::clone(s),
                None => {
                    let s = Arc::new(self.zero_set(&star, height, recertify)?);
                    resolved.insert(key, Arc::clone(&s));
                    s
                }
            };
            sets.push((*set).clone());
        }
        GroupZeros::from_sets(group, sets, height)
    }
}
