//! Evaluation: ROUGE-L, inter-annotator agreement and system comparison.

pub mod agreement;
pub mod report;
pub mod rouge;

pub use agreement::{agreement_report, krippendorff_alpha, pairwise_accuracy, AgreementReport, CoincidenceMatrix};
pub use report::{
    active_annotators, compare_systems, relevance_agreement, render_report, EvalReport, Extraction, SystemOutput,
    SystemReport, TaskScores,
};
pub use rouge::{lcs_len, rouge_l, rouge_l_text, rouge_tokens, RougeScore};
