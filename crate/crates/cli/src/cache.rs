//! On-disk class lists: one JSON Lines file per (q, m, modulus, θ).
//!
//! The files are the only state; the index is rebuilt by scanning them.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hecketrace::drinfeld::{ClassList, ClassRecord};
use hecketrace::ffield::{FFElem, FieldTower};
use hecketrace::Error;

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, serde::Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub q: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub theta: Vec<u32>,
    pub records: usize,
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, tower: &FieldTower, theta: FFElem) -> PathBuf {
        let name = format!("q{}_m{}_mod{}_theta{}.jsonl", tower.q(), tower.m(), join(tower.modulus()), join(&tower.coeffs(theta)));
        self.dir.join(name)
    }

    /// Unreadable files are invalid input; records that fail the class-list
    /// checks keep their error kind.
    pub fn load(&self, tower: &FieldTower, theta: FFElem) -> Result<Option<ClassList>, Error> {
        let path = self.path(tower, theta);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))),
        };
        let records = parse_records(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        ClassList::from_records(tower, theta, &records).map(Some).map_err(|e| {
            let msg = format!("{}: {e}", path.display());
            match e {
                Error::TheoryViolation(_) => Error::TheoryViolation(msg),
                _ => Error::InvalidArgument(msg),
            }
        })
    }

    /// Writes the list unless a file for its key already exists.
    pub fn store(&self, list: &ClassList) -> Result<(), String> {
        let path = self.path(list.tower(), list.theta());
        if path.exists() {
            return Ok(());
        }
        fs::create_dir_all(&self.dir).map_err(|e| format!("cannot create {}: {e}", self.dir.display()))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
            for r in list.to_records() {
                serde_json::to_writer(&mut f, &r)?;
                f.write_all(b"\n")?;
            }
            f.into_inner().map_err(|e| e.into_error())?.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            format!("cannot write {}: {e}", path.display())
        })
    }

    fn files(&self) -> Result<Vec<PathBuf>, String> {
        let dir = match fs::read_dir(&self.dir) {
            Ok(d) => d,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(format!("cannot read {}: {e}", self.dir.display())),
        };
        let mut out: Vec<PathBuf> = dir.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "jsonl")).collect();
        out.sort();
        Ok(out)
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>, String> {
        let mut out = Vec::new();
        for path in self.files()? {
            let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let records = parse_records(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let Some(first) = records.first() else { continue };
            out.push(CacheEntry {
                file: path.file_name().unwrap_or_default().to_string_lossy().into_owned(),
                q: first.q,
                m: first.m,
                modulus: first.modulus.clone(),
                theta: first.theta.clone(),
                records: records.len(),
            });
        }
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize, String> {
        let files = self.files()?;
        for f in &files {
            fs::remove_file(f).map_err(|e| format!("cannot remove {}: {e}", f.display()))?;
        }
        Ok(files.len())
    }
}

fn parse_records(text: &str) -> Result<Vec<ClassRecord>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}
