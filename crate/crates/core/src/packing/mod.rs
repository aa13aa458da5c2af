//! Packings of edge-disjoint spanning sparse subgraphs, their structure, and the
//! hypothesis checks for the packing constructions.

pub mod decompose;
pub mod hypothesis;
pub mod pipelines;
pub mod structure;
pub mod union;

pub use decompose::{check_adjacency_clause, decompose_p_rigid, Decomposition};
pub use hypothesis::{hypothesis_check, HypothesisReport, HypothesisSpec, HypothesisWitness, Phi};
pub use pipelines::{pack_partition_rigid, preset_pipeline, DegreeMode, PartitionRigidOutcome, PipelineOptions, Preset, PresetOutcome};
pub use structure::{structure_partition, RigidSpan, StructureCertificate};
pub use union::{matroid_union_pack, PackedPart, Packing};
