//! Write a small corpus to disk, load it back and search it for sextics of
//! the expected shape over each `Q(√d)`.

use num_bigint::BigInt;
use quadfield_audit::data::reference;
use quadfield_audit::fields::corpus::to_csv;
use quadfield_audit::fields::{load_corpus, search_s3_candidates, CorpusEntry, Ramification};

fn main() -> quadfield_audit::Result<()> {
    let mut entries = Vec::new();
    for row in &reference().table2 {
        let c = row.polynomial.coeffs().to_vec();
        entries.push(CorpusEntry::new(c, Some(format!("d={}", row.d)))?);
    }
    // decoys: reducible, cyclic and a generic sextic
    for c in [[1, 0, 0, 0, 0, 0, 1], [-1, 0, 0, 0, 0, 0, 1], [1, -1, 0, 0, 0, 0, 1]] {
        entries.push(CorpusEntry::new(c.iter().map(|&x| BigInt::from(x)).collect(), None)?);
    }
    let path = std::env::temp_dir().join("sextic_corpus.csv");
    std::fs::write(&path, to_csv(&entries)?)?;
    let load = load_corpus(&path)?;
    println!("{} entries, {} bad rows from {}", load.entries.len(), load.errors.len(), path.display());

    for ram in [Ramification::OnlyOver2, Ramification::Unramified] {
        let out = search_s3_candidates(&load.entries, None, ram);
        println!("\n{ram}: {} candidates", out.candidates.len());
        for c in &out.candidates {
            println!("  d = {:>4}  {}  [{}]", c.record.d, c.record.polynomial, c.label.as_deref().unwrap_or("-"));
        }
        for x in &out.excluded {
            println!("  entry {} excluded: {}", x.index + 1, x.reason);
        }
    }
    Ok(())
}
