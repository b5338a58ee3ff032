use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::config::RunConfig;
use crate::CliError;

/// One output file. On stdout only its contents are written.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: Vec<u8>,
}

impl Artifact {
    pub fn text(name: &str, contents: String) -> Self {
        Artifact {
            name: name.to_string(),
            contents: contents.into_bytes(),
        }
    }
}

pub struct Sink<'a> {
    dir: Option<PathBuf>,
    stdout: &'a mut dyn Write,
    emitted: usize,
}

impl<'a> Sink<'a> {
    pub fn new(dir: Option<PathBuf>, stdout: &'a mut dyn Write) -> Self {
        Sink {
            dir,
            stdout,
            emitted: 0,
        }
    }

    fn write_file(&self, name: &str, contents: &[u8]) -> Result<(), CliError> {
        let dir = self.dir.as_ref().expect("output directory");
        let path = dir.join(name);
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(&path, contents))
            .map_err(|source| CliError::Output {
                path: path.display().to_string(),
                source,
            })
    }

    /// Writes `config.json` to the output directory, or echoes the resolved
    /// configuration on stderr when results go to stdout.
    pub fn config(&mut self, config: &RunConfig, stderr: &mut dyn Write) -> Result<(), CliError> {
        let json = config.to_json();
        if self.dir.is_some() {
            self.write_file("config.json", format!("{json}\n").as_bytes())
        } else {
            let compact: serde_json::Value = serde_json::from_str(&json).expect("valid json");
            let _ = writeln!(stderr, "resolved config: {compact}");
            Ok(())
        }
    }

    pub fn emit(&mut self, artifact: &Artifact) -> Result<(), CliError> {
        if self.dir.is_some() {
            return self.write_file(&artifact.name, &artifact.contents);
        }
        let separate = if self.emitted > 0 { &b"\n"[..] } else { &b""[..] };
        self.emitted += 1;
        self.stdout
            .write_all(separate)
            .and_then(|_| self.stdout.write_all(&artifact.contents))
            .and_then(|_| self.stdout.flush())
            .map_err(|source| CliError::Output {
                path: "stdout".into(),
                source,
            })
    }
}
