use std::fs::{self, File};
use std::io::{self, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{QuranCorpus, Verse};

pub const ARTIFACT_FORMAT: &str = "ayatrack-index";
pub const ARTIFACT_VERSION: u32 = 1;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn sha256_file(path: &Path) -> io::Result<String> {
    let mut file = File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = file.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

/// The categorized corpus as written by `build-index`.
///
/// The match index itself is rebuilt from the verses on load, which takes
/// well under a second for the full text.
#[derive(Debug, Serialize, Deserialize)]
pub struct IndexArtifact {
    pub format: String,
    pub version: u32,
    pub corpus_sha256: String,
    pub categories_sha256: Option<String>,
    /// Hash of the canonical verse JSON; equal for equal inputs.
    pub content_sha256: String,
    pub verse_count: usize,
    pub verses: Vec<Verse>,
}

#[derive(Debug, thiserror::Error)]
pub enum ArtifactError {
    #[error("cannot read index {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("index {path} is not a valid artifact: {reason}")]
    Invalid { path: String, reason: String },
}

impl IndexArtifact {
    pub fn new(corpus: &QuranCorpus, corpus_sha256: String, categories_sha256: Option<String>) -> Self {
        IndexArtifact {
            format: ARTIFACT_FORMAT.to_string(),
            version: ARTIFACT_VERSION,
            corpus_sha256,
            categories_sha256,
            content_sha256: sha256_hex(&corpus.to_json()),
            verse_count: corpus.len(),
            verses: corpus.verses().to_vec(),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec(self).expect("artifact serializes");
        bytes.push(b'\n');
        bytes
    }

    pub fn write(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self, ArtifactError> {
        let shown = path.display().to_string();
        let bytes = fs::read(path).map_err(|source| ArtifactError::Io {
            path: shown.clone(),
            source,
        })?;
        let invalid = |reason: String| ArtifactError::Invalid {
            path: shown.clone(),
            reason,
        };
        let artifact: IndexArtifact = serde_json::from_slice(&bytes).map_err(|e| invalid(e.to_string()))?;
        if artifact.format != ARTIFACT_FORMAT || artifact.version != ARTIFACT_VERSION {
            return Err(invalid(format!("unsupported format {} v{}", artifact.format, artifact.version)));
        }
        Ok(artifact)
    }

    /// Rebuilds the corpus, checking the stored content hash.
    pub fn corpus(self) -> Result<QuranCorpus, String> {
        let expected = self.content_sha256;
        let corpus = QuranCorpus::from_verses(self.verses, true).map_err(|e| e.to_string())?;
        let actual = sha256_hex(&corpus.to_json());
        if actual != expected {
            return Err(format!("content hash mismatch: stored {expected}, computed {actual}"));
        }
        Ok(corpus)
    }
}
