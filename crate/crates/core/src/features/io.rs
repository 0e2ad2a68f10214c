//! Templates as CSV rows: `method_id,label,values...`.
//!
//! Vector templates list their values. Signal bundles list the number of
//! signals, each signal's length, then the concatenated samples. Floats are
//! written in shortest round-trip form.

use super::{DistanceKind, FeatureError, Method, Result, Template, TemplateData};

fn is_bundle(m: Method) -> bool {
    matches!(
        m.descriptor().distance,
        DistanceKind::DtwSum | DistanceKind::Covariance
    )
}

pub fn write_templates(templates: &[Template]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for t in templates {
        let mut row = vec![
            t.method.id().to_string(),
            t.label.clone().unwrap_or_default(),
        ];
        match &t.data {
            TemplateData::Vector(v) => row.extend(v.iter().map(f64::to_string)),
            TemplateData::Signals(s) => {
                row.push(s.len().to_string());
                row.extend(s.iter().map(|x| x.len().to_string()));
                row.extend(s.iter().flatten().map(f64::to_string));
            }
            TemplateData::Empty => {}
        }
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

pub fn read_templates(text: &str) -> Result<Vec<Template>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 1;
        let err = |msg: String| FeatureError::Parse { line, msg };
        let rec = rec.map_err(|e| err(e.to_string()))?;
        let method: Method = rec.get(0).unwrap_or_default().parse()?;
        let label = rec.get(1).filter(|l| !l.is_empty()).map(str::to_string);
        let nums: Vec<f64> = rec
            .iter()
            .skip(2)
            .map(|v| v.trim().parse::<f64>().map_err(|_| err(format!("bad number {v:?}"))))
            .collect::<Result<_>>()?;
        let data = if method == Method::Random {
            TemplateData::Empty
        } else if is_bundle(method) {
            let count = |x: f64| -> Result<usize> {
                if x >= 0.0 && x.fract() == 0.0 {
                    Ok(x as usize)
                } else {
                    Err(err(format!("bad count {x}")))
                }
            };
            let n = count(*nums.first().ok_or_else(|| err("missing signal count".into()))?)?;
            let lens = nums
                .get(1..1 + n)
                .ok_or_else(|| err("missing signal lengths".into()))?
                .iter()
                .map(|&x| count(x))
                .collect::<Result<Vec<_>>>()?;
            let mut data = &nums[1 + n..];
            if data.len() != lens.iter().sum::<usize>() {
                return Err(err("signal lengths do not add up".into()));
            }
            let mut signals = Vec::with_capacity(n);
            for l in lens {
                signals.push(data[..l].to_vec());
                data = &data[l..];
            }
            TemplateData::Signals(signals)
        } else {
            TemplateData::Vector(nums)
        };
        out.push(Template::new(method, label, data));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ts = vec![
            Template::vector(Method::Ali, Some("07".into()), vec![0.1, 1.0 / 3.0]),
            Template::new(
                Method::Jiang,
                None,
                TemplateData::Signals(vec![vec![1.0, 2.0], vec![], vec![-3.5]]),
            ),
            Template::new(Method::Random, Some("x".into()), TemplateData::Empty),
        ];
        let text = write_templates(&ts);
        assert!(text.starts_with("ali,07,0.1,0.3333333333333333\n"));
        assert_eq!(read_templates(&text).unwrap(), ts);
    }

    #[test]
    fn bad_rows() {
        assert!(read_templates("ali,a,x\n").is_err());
        assert!(read_templates("nope,a,1\n").is_err());
        assert!(read_templates("jiang,a,2,1,1,5\n").is_err());
    }
}
