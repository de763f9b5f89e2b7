use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

/// Everything that ends a run early, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Core(zeta_forge::Error),
    Usage(String),
    Io(String, io::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Core(zeta_forge::Error::UnknownFormula(_)) => 2,
            Failure::Core(_) | Failure::Usage(_) => 3,
            Failure::Io(..) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(zeta_forge::Error::Accuracy { message, best }) => {
                write!(f, "accuracy not reached: {message}; best value {best:.30}")
            }
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl From<zeta_forge::Error> for Failure {
    fn from(e: zeta_forge::Error) -> Self {
        Failure::Core(e)
    }
}

pub fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn csv_error(e: csv::Error) -> Failure {
    Failure::Usage(format!("csv encoding: {e}"))
}

pub fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Usage(format!("csv encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// Write `body` to stdout (`None` or "-") or atomically to a file: the data
/// goes to a sibling temp file that is then renamed over the target.
pub fn emit(body: &str, out: Option<&Path>) -> Result<(), Failure> {
    let path = match out {
        None => return write_stdout(body),
        Some(p) if p.as_os_str() == "-" => return write_stdout(body),
        Some(p) => p,
    };
    let io_err = |e| Failure::Io(path.display().to_string(), e);
    let name = path.file_name().ok_or_else(|| {
        io_err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "not a file path",
        ))
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let written = fs::File::create(&tmp).and_then(|mut f| {
        f.write_all(body.as_bytes())?;
        f.sync_all()
    });
    if let Err(e) = written.and_then(|_| fs::rename(&tmp, path)) {
        let _ = fs::remove_file(&tmp);
        return Err(io_err(e));
    }
    Ok(())
}

fn write_stdout(body: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(body.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Io("stdout".into(), e))
}
