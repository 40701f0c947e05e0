//! JSON exchange formats.
//!
//! Set functions:
//!
//! ```json
//! {"frame": ["a","b","c"], "kind": "mass", "values": {"a": 0.5, "a,b,c": 0.5}}
//! {"frame": ["a","b","c"], "kind": "mass", "dense": [0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]}
//! ```
//!
//! Sparse keys are comma-joined member labels in frame order; omitted
//! subsets are 0; the empty string is the empty set. The dense form is
//! indexed by subset bitmask. Values are written with 12 significant
//! digits.
//!
//! Graphs and pipelines:
//!
//! ```json
//! {"source": {"size": 2}, "target": {"size": 2}, "arrows": [[0, 0], [0, 1], [1, 1]]}
//! {"source": {"size": 2}, "target": {"size": 2}, "weights": [[0, 1, -1.0]]}
//! ```
//!
//! A pipeline file is a JSON array of stage objects, plain or weighted.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{FiniteSet, Graph, Pipeline, Stage, WeightedGraph};
use crate::setfun::{Frame, Kind, SetFunction};

/// Round to 12 significant decimal digits, the serialization precision.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Serialize, Deserialize)]
struct SetFunctionFile {
    frame: Vec<String>,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<Vec<f64>>,
}

pub fn set_function_to_json(f: &SetFunction, dense: bool) -> String {
    let file = if dense {
        SetFunctionFile {
            frame: f.frame().elements().to_vec(),
            kind: f.kind().as_str().to_string(),
            values: None,
            dense: Some(f.values().iter().map(|&v| round_sig(v)).collect()),
        }
    } else {
        let mut values = BTreeMap::new();
        for (mask, v) in f.iter_nonzero() {
            values.insert(f.frame().subset_key(mask), round_sig(v));
        }
        SetFunctionFile {
            frame: f.frame().elements().to_vec(),
            kind: f.kind().as_str().to_string(),
            values: Some(values),
            dense: None,
        }
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn set_function_from_json(text: &str) -> Result<SetFunction> {
    let file: SetFunctionFile =
        serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    let frame = Frame::new(file.frame)?;
    let kind = Kind::parse(&file.kind)
        .ok_or_else(|| Error::BadFile(format!("unknown kind {:?}", file.kind)))?;
    match (file.values, file.dense) {
        (Some(values), None) => {
            let mut dense = vec![0.0; frame.subset_count()];
            for (key, value) in values {
                let mask = frame.parse_subset_key(&key)?;
                dense[mask] = value;
            }
            SetFunction::new(frame, kind, dense)
        }
        (None, Some(dense)) => SetFunction::new(frame, kind, dense),
        (Some(_), Some(_)) => Err(Error::BadFile(
            "give either \"values\" or \"dense\", not both".to_string(),
        )),
        (None, None) => Err(Error::BadFile(
            "one of \"values\" or \"dense\" is required".to_string(),
        )),
    }
}

#[derive(Serialize, Deserialize)]
struct FiniteSetFile {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FiniteSetFile {
    fn from_set(set: &FiniteSet) -> FiniteSetFile {
        FiniteSetFile {
            size: set.size(),
            name: set.name().map(str::to_string),
            labels: set.labels().map(<[String]>::to_vec),
        }
    }

    fn into_set(self) -> Result<FiniteSet> {
        let mut set = match self.name {
            Some(name) => FiniteSet::named(name, self.size),
            None => FiniteSet::of_size(self.size),
        };
        if let Some(labels) = self.labels {
            set = set.with_labels(labels)?;
        }
        Ok(set)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    source: FiniteSetFile,
    target: FiniteSetFile,
    arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct WeightedGraphFile {
    source: FiniteSetFile,
    target: FiniteSetFile,
    weights: Vec<(usize, usize, f64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StageFile {
    Weighted(WeightedGraphFile),
    Plain(GraphFile),
}

impl GraphFile {
    fn from_graph(g: &Graph) -> GraphFile {
        GraphFile {
            source: FiniteSetFile::from_set(g.source()),
            target: FiniteSetFile::from_set(g.target()),
            arrows: g.arrows().collect(),
        }
    }

    fn into_graph(self) -> Result<Graph> {
        Graph::new(
            self.source.into_set()?,
            self.target.into_set()?,
            self.arrows,
        )
    }
}

impl WeightedGraphFile {
    fn from_graph(w: &WeightedGraph) -> WeightedGraphFile {
        WeightedGraphFile {
            source: FiniteSetFile::from_set(w.source()),
            target: FiniteSetFile::from_set(w.target()),
            weights: w.entries().map(|(s, t, w)| (s, t, round_sig(w))).collect(),
        }
    }

    fn into_graph(self) -> Result<WeightedGraph> {
        WeightedGraph::new(
            self.source.into_set()?,
            self.target.into_set()?,
            self.weights,
        )
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    let mut text =
        serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    file.into_graph()
}

pub fn weighted_graph_to_json(w: &WeightedGraph) -> String {
    let mut text = serde_json::to_string_pretty(&WeightedGraphFile::from_graph(w))
        .expect("plain data serializes");
    text.push('\n');
    text
}

pub fn weighted_graph_from_json(text: &str) -> Result<WeightedGraph> {
    let file: WeightedGraphFile =
        serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    file.into_graph()
}

pub fn pipeline_to_json(p: &Pipeline) -> String {
    let stages: Vec<StageFile> = p
        .stages()
        .iter()
        .map(|stage| match stage {
            Stage::Plain(g) => StageFile::Plain(GraphFile::from_graph(g)),
            Stage::Weighted(w) => StageFile::Weighted(WeightedGraphFile::from_graph(w)),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&stages).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn pipeline_from_json(text: &str) -> Result<Pipeline> {
    let stages: Vec<StageFile> =
        serde_json::from_str(text).map_err(|e| Error::BadFile(e.to_string()))?;
    let stages = stages
        .into_iter()
        .map(|stage| {
            Ok(match stage {
                StageFile::Plain(g) => Stage::Plain(g.into_graph()?),
                StageFile::Weighted(w) => Stage::Weighted(w.into_graph()?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Pipeline::new(stages)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T>(path: &Path, result: Result<T>) -> Result<T> {
    result.map_err(|e| match e {
        e @ (Error::Io { .. } | Error::Json { .. }) => e,
        other => Error::BadFile(format!("{}: {other}", path.display())),
    })
}

pub fn load_set_function(path: &Path) -> Result<SetFunction> {
    let text = read(path)?;
    in_file(path, set_function_from_json(&text))
}

pub fn save_set_function(path: &Path, f: &SetFunction, dense: bool) -> Result<()> {
    write(path, &set_function_to_json(f, dense))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = read(path)?;
    in_file(path, graph_from_json(&text))
}

pub fn save_graph(path: &Path, g: &Graph) -> Result<()> {
    write(path, &graph_to_json(g))
}

pub fn load_pipeline(path: &Path) -> Result<Pipeline> {
    let text = read(path)?;
    in_file(path, pipeline_from_json(&text))
}

pub fn save_pipeline(path: &Path, p: &Pipeline) -> Result<()> {
    write(path, &pipeline_to_json(p))
}

pub fn save_weighted_graph(path: &Path, w: &WeightedGraph) -> Result<()> {
    write(path, &weighted_graph_to_json(w))
}

pub fn save_text(path: &Path, text: &str) -> Result<()> {
    write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_format_round_trips() {
        let frame = Frame::new(["a", "b", "c"]).unwrap();
        let mut f = SetFunction::zeros(frame, Kind::Mass);
        f.set_value(0b001, 0.5).unwrap();
        f.set_value(0b111, 0.5).unwrap();
        let text = set_function_to_json(&f, false);
        assert!(text.contains("\"a\": 0.5"));
        assert!(text.contains("\"a,b,c\": 0.5"));
        // zero subsets are omitted from the values map
        assert!(!text.contains("\"b\":"));
        let back = set_function_from_json(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn dense_format_round_trips() {
        let frame = Frame::new(["a", "b"]).unwrap();
        let f = SetFunction::new(frame, Kind::Raw, vec![0.25, -1.5, 0.0, 3.0]).unwrap();
        let back = set_function_from_json(&set_function_to_json(&f, true)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn documented_sparse_example_parses() {
        let text = r#"{"frame": ["a","b","c"], "kind": "mass",
                       "values": {"": 0.0, "a": 0.5, "a,b,c": 0.5}}"#;
        let f = set_function_from_json(text).unwrap();
        assert_eq!(f.kind(), Kind::Mass);
        assert_eq!(f.value(1), 0.5);
        assert_eq!(f.value(7), 0.5);
        assert_eq!(f.value(3), 0.0);
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(matches!(
            set_function_from_json("{\"frame\": [\"a\"], \"kind\": \"mass\"}"),
            Err(Error::BadFile(_))
        ));
        assert!(matches!(
            set_function_from_json(
                "{\"frame\": [\"a\"], \"kind\": \"mass\", \"values\": {}, \"dense\": [0.0, 1.0]}"
            ),
            Err(Error::BadFile(_))
        ));
        assert!(matches!(
            set_function_from_json(
                "{\"frame\": [\"a\"], \"kind\": \"masses\", \"dense\": [0.0, 1.0]}"
            ),
            Err(Error::BadFile(_))
        ));
        // bad keys carry the key in the error
        let err = set_function_from_json(
            "{\"frame\": [\"a\"], \"kind\": \"mass\", \"values\": {\"z\": 1.0}}",
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadKey { ref key, .. } if key == "z"));
        // dense length must be 2^n
        assert!(set_function_from_json(
            "{\"frame\": [\"a\"], \"kind\": \"mass\", \"dense\": [0.0, 1.0, 0.0]}"
        )
        .is_err());
    }

    #[test]
    fn values_rounded_to_twelve_digits() {
        let frame = Frame::new(["a"]).unwrap();
        let f = SetFunction::new(frame, Kind::Raw, vec![0.0, 1.0 / 3.0]).unwrap();
        let text = set_function_to_json(&f, false);
        assert!(text.contains("0.333333333333"), "{text}");
        assert!(!text.contains("0.3333333333333"), "{text}");
    }

    #[test]
    fn graph_and_pipeline_round_trip() {
        let set = FiniteSet::of_size(2);
        let g = Graph::new(set.clone(), set.clone(), vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);

        let w = WeightedGraph::new(set.clone(), set, vec![(0, 1, -1.0), (0, 0, 1.0)]).unwrap();
        let back = weighted_graph_from_json(&weighted_graph_to_json(&w)).unwrap();
        assert_eq!(back, w);

        let p = Pipeline::new(vec![Stage::Plain(g), Stage::Weighted(w)]).unwrap();
        let back = pipeline_from_json(&pipeline_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn minimal_graph_json_accepted() {
        let text = r#"{"source": {"size": 2}, "target": {"size": 1}, "arrows": [[0, 0], [1, 0]]}"#;
        let g = graph_from_json(text).unwrap();
        assert_eq!(g.arrow_count(), 2);
        assert!(graph_from_json(
            r#"{"source": {"size": 2}, "target": {"size": 1}, "arrows": [[5, 0]]}"#
        )
        .is_err());
    }

    #[test]
    fn files_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mass.json");
        let frame = Frame::new(["a", "b"]).unwrap();
        let f = SetFunction::point_mass(frame, 0b11).unwrap();
        save_set_function(&path, &f, false).unwrap();
        assert_eq!(load_set_function(&path).unwrap(), f);

        let missing = dir.path().join("absent.json");
        assert!(matches!(load_set_function(&missing), Err(Error::Io { .. })));
    }
}
