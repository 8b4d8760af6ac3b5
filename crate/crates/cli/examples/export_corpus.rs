//! Writes the sample documents under `data/`:
//! `cargo run -p polyadic-cli --example export_corpus -- data`

use std::fs;
use std::path::PathBuf;

use polyadic::corpus;
use polyadic::doc::{to_json, GroupDoc, PresentationDoc, SystemDoc};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    fs::create_dir_all(&dir)?;

    let presentations = [
        ("e1-presentation", corpus::cyclic_presentation(3, 2, 1, 0)),
        ("e2-presentation", corpus::cyclic_presentation(3, 4, 1, 2)),
        ("e3-presentation", corpus::cyclic_presentation(3, 3, 2, 0)),
        ("s3-n4-presentation", corpus::s3_presentation(4, corpus::S3_THREE_CYCLE)),
    ];
    for (name, p) in presentations {
        fs::write(dir.join(format!("{name}.json")), to_json(&PresentationDoc::from_presentation(&p)))?;
        let table = GroupDoc::table_of(&p.derive()?)?;
        let name = name.trim_end_matches("-presentation");
        fs::write(dir.join(format!("{name}-table.json")), to_json(&table))?;
    }

    let systems = [
        ("s1-system", corpus::s1()),
        ("e2-tower-system", corpus::e2_tower()),
        ("z3-tower-system", corpus::z3_tower()),
        ("s3-sign-n4-system", corpus::s3_sign_system(4, corpus::S3_THREE_CYCLE)),
        ("diamond-system", corpus::klein_diamond()),
    ];
    for (name, s) in systems {
        fs::write(dir.join(format!("{name}.json")), to_json(&SystemDoc::from_system(&s)?))?;
    }
    Ok(())
}
