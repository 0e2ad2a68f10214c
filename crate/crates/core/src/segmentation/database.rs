use std::fs;
use std::path::Path;

use super::{GaitCycle, GaitDatabase, Result, SegmentationError};
use crate::mocap::{parse_amc, parse_asf, subject_from_file_name, write_amc, write_asf, Skeleton};

pub const MANIFEST_FILE: &str = "manifest.csv";
pub const SKELETON_FILE: &str = "skeleton.asf";

const HEADER: [&str; 7] = [
    "file",
    "subject_id",
    "source_file",
    "start_frame",
    "end_frame",
    "dtw_distance",
    "threshold",
];

fn io(path: &Path, e: impl std::fmt::Display) -> SegmentationError {
    SegmentationError::Io(format!("{}: {e}", path.display()))
}

/// Writes one AMC file per cycle (`<subject>_<index>.amc`, index counted per
/// subject from 1), the skeleton and a CSV manifest. Frame ranges in the
/// manifest are 1-based and inclusive, like AMC frame numbers.
pub fn write_database(db: &GaitDatabase, skeleton: &Skeleton, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let skel_path = dir.join(SKELETON_FILE);
    fs::write(&skel_path, write_asf(skeleton)).map_err(|e| io(&skel_path, e))?;
    let manifest_path = dir.join(MANIFEST_FILE);
    let mut w = csv::Writer::from_path(&manifest_path).map_err(|e| io(&manifest_path, e))?;
    w.write_record(HEADER).map_err(|e| io(&manifest_path, e))?;
    let mut next_index = std::collections::BTreeMap::<&str, usize>::new();
    for s in &db.samples {
        let k = next_index.entry(s.subject.as_str()).or_insert(0);
        *k += 1;
        let name = format!("{}_{}.amc", s.subject, k);
        let path = dir.join(&name);
        fs::write(&path, write_amc(&s.motion)).map_err(|e| io(&path, e))?;
        w.write_record([
            name,
            s.subject.clone(),
            s.source_file.clone(),
            (s.start + 1).to_string(),
            s.end.to_string(),
            s.distance.to_string(),
            db.threshold.to_string(),
        ])
        .map_err(|e| io(&manifest_path, e))?;
    }
    w.flush().map_err(|e| io(&manifest_path, e))?;
    Ok(())
}

/// Loads a database directory. The skeleton comes from `skeleton` if given,
/// otherwise from the directory's `skeleton.asf`. Without a manifest every
/// `*.amc` file is loaded and the subject is taken from the file name.
pub fn read_database(dir: &Path, skeleton: Option<&Skeleton>) -> Result<(Skeleton, GaitDatabase)> {
    let skeleton = match skeleton {
        Some(s) => s.clone(),
        None => {
            let p = dir.join(SKELETON_FILE);
            let text = fs::read_to_string(&p).map_err(|e| io(&p, e))?;
            parse_asf(&text)?
        }
    };
    let load = |name: &str| -> Result<crate::mocap::MotionSequence> {
        let p = dir.join(name);
        let text = fs::read_to_string(&p).map_err(|e| io(&p, e))?;
        parse_amc(&text, &skeleton).map_err(|e| SegmentationError::Io(format!("{}: {e}", p.display())))
    };
    let manifest_path = dir.join(MANIFEST_FILE);
    let mut samples = Vec::new();
    let mut threshold = f64::NAN;
    if manifest_path.exists() {
        let mut r = csv::Reader::from_path(&manifest_path).map_err(|e| io(&manifest_path, e))?;
        for (row, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| io(&manifest_path, e))?;
            let field = |i: usize| {
                rec.get(i).ok_or_else(|| {
                    SegmentationError::Manifest(format!("row {} has too few fields", row + 1))
                })
            };
            let number = |i: usize| -> Result<f64> {
                field(i)?.parse::<f64>().map_err(|_| {
                    SegmentationError::Manifest(format!("row {}: bad {}", row + 1, HEADER[i]))
                })
            };
            let file = field(0)?;
            let subject = field(1)?.to_string();
            let motion = load(file)?.with_source(subject.clone(), field(2)?);
            let start = number(3)? as usize;
            let end = number(4)? as usize;
            threshold = number(6)?;
            samples.push(GaitCycle {
                subject,
                source_file: field(2)?.to_string(),
                start: start.saturating_sub(1),
                end,
                distance: number(5)?,
                motion,
            });
        }
    } else {
        let mut names: Vec<String> = fs::read_dir(dir)
            .map_err(|e| io(dir, e))?
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|n| n.to_ascii_lowercase().ends_with(".amc"))
            .collect();
        names.sort();
        for name in names {
            let subject = subject_from_file_name(&name);
            let motion = load(&name)?.with_source(subject.clone(), name.clone());
            let end = motion.len();
            samples.push(GaitCycle {
                subject,
                source_file: name,
                start: 0,
                end,
                distance: f64::NAN,
                motion,
            });
        }
    }
    Ok((skeleton, GaitDatabase::from_samples(samples, threshold)))
}
