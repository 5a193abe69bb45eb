//! End-to-end runs of the library pipeline on the bundled sample data.

use std::path::{Path, PathBuf};

use finrel::corpus::{load_annotations, load_corpus, NewsItem};
use finrel::eval::compare_systems;
use finrel::pipeline::{
    process_item, results_from_json, results_to_json, rule_system, run_pipeline, Models, PipelineConfig,
    Resources,
};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn setup() -> (PipelineConfig, Resources, Vec<NewsItem>) {
    let config = PipelineConfig::load(data().join("config.toml")).unwrap();
    let resources = Resources::load(&config.paths).unwrap();
    let corpus = load_corpus(&config.paths.corpus).unwrap();
    (config, resources, corpus)
}

#[test]
fn test_bundled_models_detect_valid_spans() {
    let (config, resources, corpus) = setup();
    let models = Models::load(&config.paths).unwrap();
    let results = run_pipeline(&corpus, &models, &resources, &config).unwrap();
    assert_eq!(results.len(), corpus.len());
    for (res, item) in results.iter().zip(&corpus) {
        res.validate(&item.body).unwrap();
        assert_eq!(res.summary.segments, res.segments.len());
    }
    let json = results_to_json(&results).unwrap();
    assert_eq!(results_from_json(&json).unwrap(), results);
}

#[test]
fn test_verizon_item() {
    let (config, resources, corpus) = setup();
    let item = corpus.iter().find(|n| n.id.starts_with("vz-")).unwrap();
    let processed = process_item(item, &resources, &config);
    assert_eq!(processed.tagged.len(), processed.sentences.len());
    assert!(processed.tagged[0].tagged.starts_with("TICKER (STOCK:TICKER_ABR)"));
    // "The company reported ..." resolves to the ticker antecedent
    let reported = processed.tagged.iter().find(|s| s.original.contains("reported")).unwrap();
    assert!(!reported.tagged.starts_with("The company"), "{}", reported.tagged);

    let models = Models::load(&config.paths).unwrap();
    let res = run_pipeline(std::slice::from_ref(item), &models, &resources, &config).unwrap().remove(0);
    assert!(res.assets.iter().any(|a| a.text == "VZ"));
    assert!(res.predictions.iter().any(|p| p.text.contains("reach $70")));
}

#[test]
fn test_short_item_is_one_segment() {
    let (config, resources, corpus) = setup();
    let item = corpus.iter().find(|n| n.body.chars().count() < config.texttiling.min_chars).unwrap();
    let processed = process_item(item, &resources, &config);
    assert_eq!(processed.segments.len(), 1);
    assert_eq!(processed.segments[0].sentence_range, 0..processed.sentences.len());
}

#[test]
fn test_rule_system_report_shape() {
    let (config, resources, corpus) = setup();
    let annotations = load_annotations(&config.paths.annotations, &corpus).unwrap();
    let report = compare_systems(&[rule_system(&corpus, &resources)], &corpus, &annotations);
    assert_eq!(report.systems.len(), 1);
    let sys = &report.systems[0];
    assert_eq!(sys.relevant.per_annotator.len(), report.annotators.len());
    assert!(sys.relevant.average.f1 > 0.0 && sys.relevant.average.f1 <= 1.0);
}
