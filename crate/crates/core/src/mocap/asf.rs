//! ASF skeleton files.

use std::collections::HashMap;
use std::fmt::Write as _;

use nalgebra::Vector3;

use super::skeleton::{AngleUnit, Dof, EulerOrder, Joint, Skeleton, Units};
use super::{MocapError, Result};

fn err(line: usize, msg: impl Into<String>) -> MocapError {
    MocapError::MalformedAsf {
        line,
        msg: msg.into(),
    }
}

fn num(tok: &str, line: usize) -> Result<f64> {
    tok.trim_matches(|c| c == '(' || c == ')')
        .parse::<f64>()
        .map_err(|_| err(line, format!("expected a number, found {tok:?}")))
}

fn vec3(toks: &[&str], line: usize) -> Result<[f64; 3]> {
    if toks.len() < 3 {
        return Err(err(line, "expected three numbers"));
    }
    Ok([num(toks[0], line)?, num(toks[1], line)?, num(toks[2], line)?])
}

#[derive(Default)]
struct BoneRecord {
    line: usize,
    name: Option<String>,
    direction: Option<[f64; 3]>,
    length: Option<f64>,
    axis: [f64; 3],
    order: EulerOrder,
    dof: Vec<Dof>,
    limits: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Preamble,
    Units,
    Documentation,
    Root,
    BoneData,
    Hierarchy,
    Other,
}

/// Parses an ASF document.
///
/// Joints come out in depth-first order of the `:hierarchy` section, so every
/// parent precedes its children. Axis angles are stored in degrees whatever
/// the file's angle unit.
pub fn parse_asf(text: &str) -> Result<Skeleton> {
    let mut section = Section::Preamble;
    let mut name = String::new();
    let mut units = Units::default();
    let mut seen_root = false;
    let mut seen_bonedata = false;
    let mut seen_hierarchy = false;

    let mut root_order: Vec<Dof> = vec![Dof::Tx, Dof::Ty, Dof::Tz, Dof::Rx, Dof::Ry, Dof::Rz];
    let mut root_axis = EulerOrder::XYZ;
    let mut root_position = [0.0; 3];
    let mut root_orientation = [0.0; 3];

    let mut bones: Vec<BoneRecord> = Vec::new();
    let mut current: Option<BoneRecord> = None;
    let mut in_limits = false;

    let mut hierarchy: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut in_hierarchy_block = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0].starts_with(':') {
            in_limits = false;
            section = match toks[0].to_ascii_lowercase().as_str() {
                ":version" => Section::Other,
                ":name" => {
                    name = toks[1..].join(" ");
                    Section::Other
                }
                ":units" => Section::Units,
                ":documentation" => Section::Documentation,
                ":root" => {
                    seen_root = true;
                    Section::Root
                }
                ":bonedata" => {
                    seen_bonedata = true;
                    Section::BoneData
                }
                ":hierarchy" => {
                    seen_hierarchy = true;
                    Section::Hierarchy
                }
                _ => Section::Other,
            };
            continue;
        }
        match section {
            Section::Preamble | Section::Documentation | Section::Other => {}
            Section::Units => match toks[0] {
                "mass" if toks.len() > 1 => units.mass = num(toks[1], line_no)?,
                "length" if toks.len() > 1 => units.length = num(toks[1], line_no)?,
                "angle" if toks.len() > 1 => {
                    units.angle = match toks[1].to_ascii_lowercase().as_str() {
                        "deg" | "degree" | "degrees" => AngleUnit::Degrees,
                        "rad" | "radian" | "radians" => AngleUnit::Radians,
                        other => return Err(err(line_no, format!("unknown angle unit {other}"))),
                    }
                }
                _ => return Err(err(line_no, format!("unexpected units entry {:?}", toks[0]))),
            },
            Section::Root => match toks[0].to_ascii_lowercase().as_str() {
                "order" => {
                    root_order = toks[1..]
                        .iter()
                        .map(|t| Dof::parse(t).ok_or_else(|| err(line_no, format!("bad dof {t}"))))
                        .collect::<Result<_>>()?;
                }
                "axis" => {
                    root_axis = toks
                        .get(1)
                        .and_then(|t| EulerOrder::parse(t))
                        .ok_or_else(|| err(line_no, "bad root axis order"))?;
                }
                "position" => root_position = vec3(&toks[1..], line_no)?,
                "orientation" => root_orientation = vec3(&toks[1..], line_no)?,
                other => return Err(err(line_no, format!("unexpected root entry {other:?}"))),
            },
            Section::BoneData => {
                let key = toks[0].to_ascii_lowercase();
                if key == "begin" {
                    if current.is_some() {
                        return Err(err(line_no, "nested begin"));
                    }
                    current = Some(BoneRecord {
                        line: line_no,
                        ..Default::default()
                    });
                    in_limits = false;
                    continue;
                }
                if key == "end" {
                    let b = current.take().ok_or_else(|| err(line_no, "end without begin"))?;
                    bones.push(b);
                    in_limits = false;
                    continue;
                }
                let b = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, "bone field outside begin/end"))?;
                if toks[0].starts_with('(') && in_limits {
                    b.limits.push(limit_pair(&toks, line_no)?);
                    continue;
                }
                in_limits = false;
                match key.as_str() {
                    "id" | "bodymass" | "cofmass" => {}
                    "name" => {
                        b.name = Some(
                            toks.get(1)
                                .ok_or_else(|| err(line_no, "missing bone name"))?
                                .to_string(),
                        )
                    }
                    "direction" => b.direction = Some(vec3(&toks[1..], line_no)?),
                    "length" => {
                        b.length = Some(num(
                            toks.get(1).ok_or_else(|| err(line_no, "missing length"))?,
                            line_no,
                        )?)
                    }
                    "axis" => {
                        b.axis = vec3(&toks[1..], line_no)?;
                        if let Some(o) = toks.get(4) {
                            b.order = EulerOrder::parse(o)
                                .ok_or_else(|| err(line_no, format!("bad axis order {o}")))?;
                        }
                    }
                    "dof" => {
                        b.dof = toks[1..]
                            .iter()
                            .map(|t| {
                                Dof::parse(t).ok_or_else(|| err(line_no, format!("bad dof {t}")))
                            })
                            .collect::<Result<_>>()?;
                    }
                    "limits" => {
                        in_limits = true;
                        b.limits.push(limit_pair(&toks[1..], line_no)?);
                    }
                    other => return Err(err(line_no, format!("unexpected bone field {other:?}"))),
                }
            }
            Section::Hierarchy => match toks[0].to_ascii_lowercase().as_str() {
                "begin" => in_hierarchy_block = true,
                "end" => in_hierarchy_block = false,
                _ => {
                    if !in_hierarchy_block {
                        return Err(err(line_no, "hierarchy entry outside begin/end"));
                    }
                    hierarchy.push((
                        line_no,
                        toks[0].to_string(),
                        toks[1..].iter().map(|s| s.to_string()).collect(),
                    ));
                }
            },
        }
    }
    if current.is_some() {
        return Err(err(0, "unterminated bone block"));
    }
    if !seen_root {
        return Err(err(0, "missing :root section"));
    }
    if !bones.is_empty() && !seen_hierarchy {
        return Err(err(0, "missing :hierarchy section"));
    }
    if seen_hierarchy && !hierarchy.is_empty() && !seen_bonedata {
        return Err(err(0, "missing :bonedata section"));
    }

    let to_deg = |v: f64| match units.angle {
        AngleUnit::Degrees => v,
        AngleUnit::Radians => v.to_degrees(),
    };

    let mut by_name: HashMap<String, usize> = HashMap::new();
    for (i, b) in bones.iter().enumerate() {
        let n = b.name.clone().ok_or_else(|| err(b.line, "bone without a name"))?;
        if n == "root" || by_name.insert(n.clone(), i).is_some() {
            return Err(err(b.line, format!("bone name {n} declared twice")));
        }
    }

    let mut children: HashMap<String, Vec<String>> = HashMap::new();
    let mut has_parent: HashMap<String, bool> = HashMap::new();
    for (line, parent, kids) in &hierarchy {
        if parent != "root" && !by_name.contains_key(parent) {
            return Err(err(*line, format!("hierarchy names undeclared bone {parent}")));
        }
        for k in kids {
            if !by_name.contains_key(k) {
                return Err(err(*line, format!("hierarchy names undeclared bone {k}")));
            }
            if has_parent.insert(k.clone(), true).is_some() {
                return Err(err(*line, format!("bone {k} has two parents")));
            }
        }
        children.entry(parent.clone()).or_default().extend(kids.iter().cloned());
    }

    let root = Joint::root(
        root_order,
        root_orientation.map(to_deg),
        root_axis,
    );
    let mut joints = vec![root];
    // depth-first, children in listed order
    let mut stack: Vec<(String, usize)> = children
        .get("root")
        .map(|k| k.iter().rev().map(|c| (c.clone(), 0)).collect())
        .unwrap_or_default();
    while let Some((bone, parent)) = stack.pop() {
        let rec = &bones[by_name[&bone]];
        let dir = rec
            .direction
            .ok_or_else(|| err(rec.line, format!("bone {bone} has no direction")))?;
        let dir = Vector3::from(dir);
        let norm = dir.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(err(rec.line, format!("bone {bone} has a degenerate direction")));
        }
        let length = rec
            .length
            .ok_or_else(|| err(rec.line, format!("bone {bone} has no length")))?;
        if !(length >= 0.0) {
            return Err(err(rec.line, format!("bone {bone} has a negative length")));
        }
        let idx = joints.len();
        joints.push(Joint {
            name: bone.clone(),
            parent: Some(parent),
            direction: dir / norm,
            length,
            axis: rec.axis.map(to_deg),
            order: rec.order,
            dof: rec.dof.clone(),
            limits: rec.limits.clone(),
        });
        if let Some(kids) = children.get(&bone) {
            for k in kids.iter().rev() {
                stack.push((k.clone(), idx));
            }
        }
    }
    if joints.len() != bones.len() + 1 {
        let missing = bones
            .iter()
            .filter_map(|b| b.name.as_deref())
            .find(|n| !joints.iter().any(|j| j.name == *n))
            .unwrap_or("?");
        return Err(err(0, format!("bone {missing} is not reachable from the root")));
    }
    Skeleton::new(name, units, Vector3::from(root_position), joints)
}

fn limit_pair(toks: &[&str], line: usize) -> Result<(f64, f64)> {
    if toks.len() < 2 {
        return Err(err(line, "limit needs two values"));
    }
    Ok((num(toks[0], line)?, num(toks[1], line)?))
}

fn fmt_angle(v: f64, unit: AngleUnit) -> String {
    let v = match unit {
        AngleUnit::Degrees => v,
        AngleUnit::Radians => v.to_radians(),
    };
    format!("{v}")
}

/// Writes a skeleton back as ASF. `parse_asf(&write_asf(s)) == s`.
pub fn write_asf(skeleton: &Skeleton) -> String {
    let mut out = String::new();
    let u = skeleton.units;
    let root = skeleton.joint(0);
    let _ = writeln!(out, ":version 1.10");
    if !skeleton.name.is_empty() {
        let _ = writeln!(out, ":name {}", skeleton.name);
    }
    let _ = writeln!(out, ":units");
    let _ = writeln!(out, "  mass {}", u.mass);
    let _ = writeln!(out, "  length {}", u.length);
    let _ = writeln!(
        out,
        "  angle {}",
        match u.angle {
            AngleUnit::Degrees => "deg",
            AngleUnit::Radians => "rad",
        }
    );
    let _ = writeln!(out, ":root");
    let order: Vec<String> = root.dof.iter().map(|d| d.as_str().to_ascii_uppercase()).collect();
    let _ = writeln!(out, "   order {}", order.join(" "));
    let _ = writeln!(out, "   axis {}", root.order);
    let p = skeleton.root_position;
    let _ = writeln!(out, "   position {} {} {}", p.x, p.y, p.z);
    let _ = writeln!(
        out,
        "   orientation {} {} {}",
        fmt_angle(root.axis[0], u.angle),
        fmt_angle(root.axis[1], u.angle),
        fmt_angle(root.axis[2], u.angle)
    );
    let _ = writeln!(out, ":bonedata");
    for (i, j) in skeleton.joints().iter().enumerate().skip(1) {
        let _ = writeln!(out, "  begin");
        let _ = writeln!(out, "     id {i}");
        let _ = writeln!(out, "     name {}", j.name);
        let d = j.direction;
        let _ = writeln!(out, "     direction {} {} {}", d.x, d.y, d.z);
        let _ = writeln!(out, "     length {}", j.length);
        let _ = writeln!(
            out,
            "     axis {} {} {} {}",
            fmt_angle(j.axis[0], u.angle),
            fmt_angle(j.axis[1], u.angle),
            fmt_angle(j.axis[2], u.angle),
            j.order
        );
        if !j.dof.is_empty() {
            let dofs: Vec<&str> = j.dof.iter().map(|d| d.as_str()).collect();
            let _ = writeln!(out, "    dof {}", dofs.join(" "));
        }
        for (k, (lo, hi)) in j.limits.iter().enumerate() {
            if k == 0 {
                let _ = writeln!(out, "    limits ({lo} {hi})");
            } else {
                let _ = writeln!(out, "           ({lo} {hi})");
            }
        }
        let _ = writeln!(out, "  end");
    }
    let _ = writeln!(out, ":hierarchy");
    let _ = writeln!(out, "  begin");
    for (i, j) in skeleton.joints().iter().enumerate() {
        let kids: Vec<&str> = skeleton
            .children(i)
            .map(|k| skeleton.joint(k).name.as_str())
            .collect();
        if !kids.is_empty() {
            let _ = writeln!(out, "    {} {}", j.name, kids.join(" "));
        }
    }
    let _ = writeln!(out, "  end");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROOT_ONLY: &str = "\
:version 1.10
:name test
:units
  mass 1.0
  length 0.45
  angle deg
:root
   order TX TY TZ RX RY RZ
   axis XYZ
   position 0 0 0
   orientation 0 0 0
:bonedata
:hierarchy
  begin
  end
";

    const TWO_BONES: &str = "\
# comment
:version 1.10
:units
  angle deg
:documentation
  free text here
:root
   order TX TY TZ RX RY RZ
   axis XYZ
   position 0 0 0
   orientation 0 0 0
:bonedata
  begin
     id 1
     name femur
     direction 0 -2 0
     length 7.5
     axis 0 0 20 XYZ
    dof rx ry rz
    limits (-160.0 20.0)
        (-70.0 70.0)
        (-60.0 70.0)
  end
  begin
     id 2
     name tibia
     direction 0 -1 0
     length 7.0
     axis 0 0 20 XYZ
    dof rx
    limits (-10.0 170.0)
  end
:hierarchy
  begin
    root femur
    femur tibia
  end
";

    #[test]
    fn root_only() {
        let s = parse_asf(ROOT_ONLY).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.bone_count(), 0);
        assert_eq!(s.units.length, 0.45);
        assert_eq!(s.name, "test");
    }

    #[test]
    fn bones_and_limits() {
        let s = parse_asf(TWO_BONES).unwrap();
        assert_eq!(s.len(), 3);
        let femur = s.joint(1);
        assert_eq!(femur.name, "femur");
        assert_eq!(femur.direction, Vector3::new(0.0, -1.0, 0.0));
        assert_eq!(femur.limits.len(), 3);
        assert_eq!(femur.limits[2], (-60.0, 70.0));
        assert_eq!(s.joint(2).parent, Some(1));
        assert_eq!(s.joint(2).dof, vec![Dof::Rx]);
    }

    #[test]
    fn undeclared_bone_in_hierarchy() {
        let text = TWO_BONES.replace("femur tibia", "femur tibia fibula");
        assert!(matches!(parse_asf(&text), Err(MocapError::MalformedAsf { .. })));
    }

    #[test]
    fn unreachable_bone() {
        let text = TWO_BONES.replace("    femur tibia\n", "");
        assert!(matches!(parse_asf(&text), Err(MocapError::MalformedAsf { .. })));
    }

    #[test]
    fn non_numeric_field() {
        let text = TWO_BONES.replace("length 7.5", "length seven");
        assert!(matches!(parse_asf(&text), Err(MocapError::MalformedAsf { .. })));
    }

    #[test]
    fn missing_root_section() {
        let text = ROOT_ONLY.replace(":root", ":notroot");
        assert!(parse_asf(&text).is_err());
    }

    #[test]
    fn write_then_parse_is_fixed_point() {
        let s = parse_asf(TWO_BONES).unwrap();
        let again = parse_asf(&write_asf(&s)).unwrap();
        assert_eq!(s, again);
        assert_eq!(write_asf(&s), write_asf(&again));
    }

    #[test]
    fn radians_are_stored_as_degrees() {
        let text = TWO_BONES
            .replace("angle deg", "angle rad")
            .replace("axis 0 0 20 XYZ", "axis 0 0 0.5 XYZ");
        let s = parse_asf(&text).unwrap();
        assert!((s.joint(1).axis[2] - 0.5f64.to_degrees()).abs() < 1e-12);
        let again = parse_asf(&write_asf(&s)).unwrap();
        assert!((again.joint(1).axis[2] - s.joint(1).axis[2]).abs() < 1e-9);
    }
}
