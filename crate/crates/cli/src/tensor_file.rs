//! JSON tensor files: `{"dims": [n1, n2, n3], "data": [...]}` for real
//! tensors, `data_re`/`data_im` for complex ones. Entries follow the
//! library layout `(k·n1 + i)·n2 + j`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use ttensor::{ComplexTensor3, Tensor3};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub dims: [usize; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_re: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_im: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedTensor {
    Real(Tensor3),
    Complex(ComplexTensor3),
}

impl LoadedTensor {
    pub fn dims(&self) -> [usize; 3] {
        match self {
            LoadedTensor::Real(t) => t.dims(),
            LoadedTensor::Complex(t) => t.dims(),
        }
    }

    pub fn to_complex(&self) -> ComplexTensor3 {
        match self {
            LoadedTensor::Real(t) => t.to_complex(),
            LoadedTensor::Complex(t) => t.clone(),
        }
    }
}

impl TensorFile {
    pub fn into_tensor(self) -> Result<LoadedTensor, String> {
        let [n1, n2, n3] = self.dims;
        match (self.data, self.data_re, self.data_im) {
            (Some(data), None, None) => Tensor3::new(n1, n2, n3, data)
                .map(LoadedTensor::Real)
                .map_err(|e| e.to_string()),
            (None, Some(re), Some(im)) => {
                if re.len() != im.len() {
                    return Err(format!(
                        "data_re has {} entries but data_im has {}",
                        re.len(),
                        im.len()
                    ));
                }
                let data = re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect();
                ComplexTensor3::new(n1, n2, n3, data)
                    .map(LoadedTensor::Complex)
                    .map_err(|e| e.to_string())
            }
            _ => Err("expected either `data` or both `data_re` and `data_im`".into()),
        }
    }

    pub fn from_tensor(t: &LoadedTensor) -> Self {
        match t {
            LoadedTensor::Real(t) => TensorFile {
                dims: t.dims(),
                data: Some(t.as_slice().to_vec()),
                data_re: None,
                data_im: None,
            },
            LoadedTensor::Complex(t) => TensorFile {
                dims: t.dims(),
                data: None,
                data_re: Some(t.as_slice().iter().map(|z| z.re).collect()),
                data_im: Some(t.as_slice().iter().map(|z| z.im).collect()),
            },
        }
    }
}

pub fn read_tensor(path: &Path) -> Result<LoadedTensor, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: TensorFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.into_tensor().map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_tensor(path: &Path, t: &LoadedTensor) -> Result<(), String> {
    let mut text = serde_json::to_string(&TensorFile::from_tensor(t)).map_err(|e| e.to_string())?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_round_trip_is_bit_exact() {
        let data: Vec<f64> = (0..12).map(|i| (i as f64 * 0.37).sin() / 3.0).collect();
        let t = LoadedTensor::Real(Tensor3::new(2, 3, 2, data).unwrap());
        let text = serde_json::to_string(&TensorFile::from_tensor(&t)).unwrap();
        let back: TensorFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_tensor().unwrap(), t);
    }

    #[test]
    fn complex_parts() {
        let file: TensorFile =
            serde_json::from_str(r#"{"dims":[1,1,2],"data_re":[1,2],"data_im":[0,-1]}"#).unwrap();
        let t = file.into_tensor().unwrap();
        assert_eq!(t.to_complex().get(0, 0, 1), Complex64::new(2.0, -1.0));
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = [
            r#"{"dims":[1,1,2],"data":[1,2],"extra":1}"#,
            r#"{"dims":[1,1,2],"data":[1]}"#,
            r#"{"dims":[1,1,1],"data_re":[1]}"#,
            r#"{"dims":[1,1,1],"data":[1],"data_re":[1],"data_im":[1]}"#,
            r#"{"dims":[1,1,1],"data_re":[1],"data_im":[1,2]}"#,
        ];
        for doc in bad {
            let parsed: Result<TensorFile, _> = serde_json::from_str(doc);
            assert!(parsed.map_err(|e| e.to_string()).and_then(TensorFile::into_tensor).is_err(), "{doc}");
        }
    }
}
