use serde::{Deserialize, Serialize};

use super::{
    BooleanRelation, ChosenOutdegreeInstance, Color, Constraint, EquitableColoringInstance, GeneralFactorInstance,
    GensatInstance, ListColoringInstance, MinMaxOutdegreeInstance, PrecoloringExtensionInstance, ProblemError,
};
use crate::graph::{EdgeWeighting, Graph, GraphJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanRelationJson {
    pub arity: usize,
    pub tuples: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub scope: Vec<usize>,
    pub relation: usize,
}

/// Wire form of every instance kind, discriminated by `"type"`. Graph
/// fields (`n`, `edges`, `weights`) sit at the top level next to the
/// type-specific ones. Outdegree instances without `weights` get unit
/// weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InstanceJson {
    ListColoring {
        #[serde(flatten)]
        graph: GraphJson,
        lists: Vec<Vec<Color>>,
    },
    Precoloring {
        #[serde(flatten)]
        graph: GraphJson,
        precolor: Vec<[u32; 2]>,
        r: Color,
    },
    Equitable {
        #[serde(flatten)]
        graph: GraphJson,
        r: Color,
    },
    GeneralFactor {
        #[serde(flatten)]
        graph: GraphJson,
        cardinality_sets: Vec<Vec<usize>>,
    },
    Gensat {
        variables: usize,
        relations: Vec<BooleanRelationJson>,
        constraints: Vec<ConstraintJson>,
    },
    ChosenOutdegree {
        #[serde(flatten)]
        graph: GraphJson,
        rho: Vec<u64>,
    },
    MinmaxOutdegree {
        #[serde(flatten)]
        graph: GraphJson,
        r: u64,
    },
}

/// Any validated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceJson", into = "InstanceJson")]
pub enum Instance {
    ListColoring(ListColoringInstance),
    Precoloring(PrecoloringExtensionInstance),
    Equitable(EquitableColoringInstance),
    GeneralFactor(GeneralFactorInstance),
    Gensat(GensatInstance),
    ChosenOutdegree(ChosenOutdegreeInstance),
    MinMaxOutdegree(MinMaxOutdegreeInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::ListColoring(_) => "list_coloring",
            Instance::Precoloring(_) => "precoloring",
            Instance::Equitable(_) => "equitable",
            Instance::GeneralFactor(_) => "general_factor",
            Instance::Gensat(_) => "gensat",
            Instance::ChosenOutdegree(_) => "chosen_outdegree",
            Instance::MinMaxOutdegree(_) => "minmax_outdegree",
        }
    }

    /// The graph the instance lives on; for constraint sets, the incidence graph.
    pub fn graph(&self) -> Graph {
        match self {
            Instance::ListColoring(i) => i.graph().clone(),
            Instance::Precoloring(i) => i.graph().clone(),
            Instance::Equitable(i) => i.graph().clone(),
            Instance::GeneralFactor(i) => i.graph().clone(),
            Instance::Gensat(i) => super::build_incidence(i),
            Instance::ChosenOutdegree(i) => i.graph().clone(),
            Instance::MinMaxOutdegree(i) => i.graph().clone(),
        }
    }
}

macro_rules! impl_from_instance {
    ($($ty:ident => $variant:ident),* $(,)?) => {
        $(impl From<$ty> for Instance {
            fn from(x: $ty) -> Self {
                Instance::$variant(x)
            }
        })*
    };
}

impl_from_instance!(
    ListColoringInstance => ListColoring,
    PrecoloringExtensionInstance => Precoloring,
    EquitableColoringInstance => Equitable,
    GeneralFactorInstance => GeneralFactor,
    GensatInstance => Gensat,
    ChosenOutdegreeInstance => ChosenOutdegree,
    MinMaxOutdegreeInstance => MinMaxOutdegree,
);

fn weights_or_unit(j: &GraphJson, g: &Graph) -> Result<EdgeWeighting, ProblemError> {
    match j.weighting(g)? {
        Some(w) => Ok(w),
        None => Ok(EdgeWeighting::uniform(g, 1)?),
    }
}

impl TryFrom<InstanceJson> for Instance {
    type Error = ProblemError;

    fn try_from(j: InstanceJson) -> Result<Self, ProblemError> {
        Ok(match j {
            InstanceJson::ListColoring { graph, lists } => {
                ListColoringInstance::new(graph.graph()?, lists)?.into()
            }
            InstanceJson::Precoloring { graph, precolor, r } => {
                let g = graph.graph()?;
                let mut pre = vec![None; g.vertex_count()];
                for [v, c] in precolor {
                    let v = v as usize;
                    g.check_vertex(v)?;
                    if pre[v].replace(c).is_some() {
                        return Err(ProblemError::Invalid(format!("vertex {v} precolored twice")));
                    }
                }
                PrecoloringExtensionInstance::new(g, pre, r)?.into()
            }
            InstanceJson::Equitable { graph, r } => EquitableColoringInstance::new(graph.graph()?, r)?.into(),
            InstanceJson::GeneralFactor { graph, cardinality_sets } => {
                GeneralFactorInstance::new(graph.graph()?, cardinality_sets)?.into()
            }
            InstanceJson::Gensat {
                variables,
                relations,
                constraints,
            } => {
                let relations = relations
                    .into_iter()
                    .map(|r| {
                        let tuples = r
                            .tuples
                            .into_iter()
                            .map(|t| {
                                t.into_iter()
                                    .map(|b| match b {
                                        0 => Ok(false),
                                        1 => Ok(true),
                                        _ => Err(ProblemError::Invalid(format!("tuple entry {b} is not 0 or 1"))),
                                    })
                                    .collect()
                            })
                            .collect::<Result<_, _>>()?;
                        BooleanRelation::new(r.arity, tuples)
                    })
                    .collect::<Result<_, _>>()?;
                let constraints = constraints
                    .into_iter()
                    .map(|c| Constraint {
                        scope: c.scope,
                        relation: c.relation,
                    })
                    .collect();
                GensatInstance::new(variables, relations, constraints)?.into()
            }
            InstanceJson::ChosenOutdegree { graph, rho } => {
                let g = graph.graph()?;
                let w = weights_or_unit(&graph, &g)?;
                ChosenOutdegreeInstance::new(g, w, rho)?.into()
            }
            InstanceJson::MinmaxOutdegree { graph, r } => {
                let g = graph.graph()?;
                let w = weights_or_unit(&graph, &g)?;
                MinMaxOutdegreeInstance::new(g, w, r)?.into()
            }
        })
    }
}

impl From<Instance> for InstanceJson {
    fn from(inst: Instance) -> Self {
        match inst {
            Instance::ListColoring(i) => InstanceJson::ListColoring {
                graph: GraphJson::from_graph(i.graph()),
                lists: i.lists().to_vec(),
            },
            Instance::Precoloring(i) => InstanceJson::Precoloring {
                graph: GraphJson::from_graph(i.graph()),
                precolor: i
                    .precolor()
                    .iter()
                    .enumerate()
                    .filter_map(|(v, c)| c.map(|c| [v as u32, c]))
                    .collect(),
                r: i.r(),
            },
            Instance::Equitable(i) => InstanceJson::Equitable {
                graph: GraphJson::from_graph(i.graph()),
                r: i.r(),
            },
            Instance::GeneralFactor(i) => InstanceJson::GeneralFactor {
                graph: GraphJson::from_graph(i.graph()),
                cardinality_sets: i.cardinality_sets().to_vec(),
            },
            Instance::Gensat(i) => InstanceJson::Gensat {
                variables: i.variable_count(),
                relations: i
                    .relations()
                    .iter()
                    .map(|r| BooleanRelationJson {
                        arity: r.arity(),
                        tuples: r
                            .tuples()
                            .iter()
                            .map(|t| t.iter().map(|&b| u8::from(b)).collect())
                            .collect(),
                    })
                    .collect(),
                constraints: i
                    .constraints()
                    .iter()
                    .map(|c| ConstraintJson {
                        scope: c.scope.clone(),
                        relation: c.relation,
                    })
                    .collect(),
            },
            Instance::ChosenOutdegree(i) => InstanceJson::ChosenOutdegree {
                graph: GraphJson::from_graph(i.graph()).with_weights(i.weights()),
                rho: i.rho().to_vec(),
            },
            Instance::MinMaxOutdegree(i) => InstanceJson::MinmaxOutdegree {
                graph: GraphJson::from_graph(i.graph()).with_weights(i.weights()),
                r: i.r(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(inst: Instance) {
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.contains(&format!("\"type\":\"{}\"", inst.kind())));
        assert_eq!(serde_json::from_str::<Instance>(&text).unwrap(), inst);
    }

    #[test]
    fn every_kind_round_trips() {
        let p3 = Graph::path(3);
        round_trip(ListColoringInstance::new(p3.clone(), vec![vec![1], vec![1, 2], vec![3]]).unwrap().into());
        round_trip(PrecoloringExtensionInstance::new(p3.clone(), vec![Some(1), None, Some(1)], 2).unwrap().into());
        round_trip(EquitableColoringInstance::new(p3.clone(), 2).unwrap().into());
        round_trip(GeneralFactorInstance::new(p3.clone(), vec![vec![1], vec![0, 2], vec![1]]).unwrap().into());
        let rel = BooleanRelation::new(2, vec![vec![true, false]]).unwrap();
        round_trip(GensatInstance::new(3, vec![rel], vec![Constraint { scope: vec![2, 0], relation: 0 }]).unwrap().into());
        let w = EdgeWeighting::new(&p3, vec![2, 5]).unwrap();
        round_trip(ChosenOutdegreeInstance::new(p3.clone(), w.clone(), vec![0, 7, 1]).unwrap().into());
        round_trip(MinMaxOutdegreeInstance::new(p3, w, 4).unwrap().into());
    }

    #[test]
    fn parses_hand_written_instances() {
        let text = r#"{"type":"chosen_outdegree","n":2,"edges":[[0,1]],"rho":[1,0]}"#;
        let Instance::ChosenOutdegree(i) = serde_json::from_str(text).unwrap() else { panic!() };
        assert_eq!(i.weights().weights(), &[1]);

        let bad = r#"{"type":"precoloring","n":2,"edges":[[0,1]],"precolor":[[0,1],[1,1]],"r":2}"#;
        assert!(serde_json::from_str::<Instance>(bad).is_err());
        let bad = r#"{"type":"gensat","variables":1,"relations":[{"arity":1,"tuples":[[2]]}],"constraints":[]}"#;
        assert!(serde_json::from_str::<Instance>(bad).is_err());
        assert!(serde_json::from_str::<Instance>(r#"{"type":"nope","n":1,"edges":[]}"#).is_err());
    }
}
