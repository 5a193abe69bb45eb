//! Comparison systems: a rule-based sentence classifier and a supervised
//! relevance classifier over n-gram features.

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{sentence_labels, AnnotationSet, NewsItem, Sentence, SpanLabel};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tagger::{TagCategory, TaggedSentence, Token};
use crate::temporal::{chi2_select, clause_split, train_ovr, verb_groups, ClassifierConfig, LinearModel, TenseTag, TextVectorizer};

/// Tags that count as financial for the rule-based relevance test.
pub const FINANCIAL_TAGS: [TagCategory; 5] = [
    TagCategory::Stock,
    TagCategory::Ticker,
    TagCategory::TickerAbr,
    TagCategory::Currency,
    TagCategory::FinAbr,
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineVerdict {
    pub news_id: String,
    pub sentence: usize,
    pub relevant: bool,
    /// Evaluated independently of `relevant`.
    pub predictive: bool,
}

/// At least one financial tag and at least one NUM.
pub fn rule_relevant_tags(tags: impl IntoIterator<Item = TagCategory>) -> bool {
    let (mut financial, mut num) = (false, false);
    for t in tags {
        financial |= FINANCIAL_TAGS.contains(&t);
        num |= t == TagCategory::Num;
    }
    financial && num
}

pub fn rule_relevant(sentence: &TaggedSentence) -> bool {
    rule_relevant_tags(sentence.tags())
}

/// First finite verb group of the first clause, if any.
pub fn main_verb_tense(tokens: &[Token]) -> Option<TenseTag> {
    let first = clause_split(tokens).into_iter().next()?;
    verb_groups(tokens)
        .into_iter()
        .find(|g| first.contains(&g.range.start))
        .map(|g| g.tense)
}

pub fn rule_predictive_tokens(tokens: &[Token]) -> bool {
    main_verb_tense(tokens) == Some(TenseTag::Future)
}

pub fn rule_predictive(sentence: &TaggedSentence) -> bool {
    rule_predictive_tokens(&sentence.tokens)
}

pub fn rule_verdict(sentence: &TaggedSentence) -> BaselineVerdict {
    BaselineVerdict {
        news_id: sentence.news_id.clone(),
        sentence: sentence.sentence,
        relevant: rule_relevant(sentence),
        predictive: rule_predictive(sentence),
    }
}

/// Per-sentence Relevant labels for one item by annotator majority: a
/// sentence is positive when more than half of the annotators of the item
/// project it positive. None when nobody annotated the item.
pub fn majority_labels(item: &NewsItem, sentences: &[Sentence], annotations: &[AnnotationSet]) -> Option<Vec<bool>> {
    let sets: Vec<&AnnotationSet> = annotations.iter().filter(|s| s.news_id == item.id).collect();
    if sets.is_empty() {
        return None;
    }
    let mut votes = vec![0usize; sentences.len()];
    for set in &sets {
        for (v, l) in votes.iter_mut().zip(sentence_labels(sentences, set.spans_with(SpanLabel::Relevant))) {
            *v += usize::from(l);
        }
    }
    Some(votes.into_iter().map(|v| 2 * v > sets.len()).collect())
}

/// Binary relevance classifier over textual n-gram features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct SupervisedModel<F: Real> {
    pub version: u32,
    pub config: ClassifierConfig,
    pub vectorizer: TextVectorizer,
    pub selected: Vec<usize>,
    pub svm: LinearModel<F>,
}

fn dense<F: Real>(vectorizer: &TextVectorizer, text: &str) -> Result<Vec<F>> {
    let mut x = vec![F::zero(); vectorizer.len()];
    for (i, c) in vectorizer.transform(text)? {
        x[i] = F::from_count(c);
    }
    Ok(x)
}

/// Trains on sentence texts (tagged form) with relevance labels.
pub fn train_supervised<F: Real, S: AsRef<str> + Sync>(
    texts: &[S],
    labels: &[bool],
    config: &ClassifierConfig,
) -> Result<SupervisedModel<F>> {
    config.validate()?;
    if texts.len() != labels.len() {
        return Err(Error::LengthMismatch(texts.len(), labels.len()));
    }
    if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
        return Err(Error::SingleClass);
    }
    let vectorizer = TextVectorizer::fit(texts, &config.textual)?;
    let x: Vec<Vec<F>> = texts
        .par_iter()
        .map(|t| dense(&vectorizer, t.as_ref()))
        .collect::<Result<_>>()?;
    let y: Vec<usize> = labels.iter().map(|&l| usize::from(l)).collect();
    let selected = chi2_select(&x, &y, config.chi2_percentile)?;
    let xs: Vec<Vec<F>> = x.iter().map(|r| selected.iter().map(|&i| r[i]).collect()).collect();
    let svm = train_ovr(&xs, &y, 2, &config.svm)?;
    Ok(SupervisedModel {
        version: 1,
        config: config.clone(),
        vectorizer,
        selected,
        svm,
    })
}

impl<F: Real> SupervisedModel<F> {
    pub fn classify(&self, text: &str) -> Result<bool> {
        let x = dense::<F>(&self.vectorizer, text)?;
        let xs: Vec<F> = self.selected.iter().map(|&i| x[i]).collect();
        Ok(self.svm.predict(&xs)? == 1)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut m: SupervisedModel<F> = serde_json::from_str(text)?;
        m.vectorizer.reindex();
        if m.svm.n_classes() != 2
            || m.svm.n_features() != m.selected.len()
            || m.selected.iter().any(|&i| i >= m.vectorizer.len())
        {
            return Err(Error::Model("inconsistent supervised model".into()));
        }
        Ok(m)
    }
}

/// One annotated item: sentence texts and their labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledItem {
    pub news_id: String,
    pub texts: Vec<String>,
    pub labels: Vec<bool>,
}

/// Leave-one-item-out predictions: each item is classified by a model
/// trained on all other items. A fold whose training labels are a single
/// class predicts that class for every sentence.
pub fn leave_one_item_out<F: Real>(items: &[LabeledItem], config: &ClassifierConfig) -> Result<Vec<Vec<bool>>> {
    (0..items.len())
        .into_par_iter()
        .map(|held| {
            let (texts, labels): (Vec<&str>, Vec<bool>) = items
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != held)
                .flat_map(|(_, it)| it.texts.iter().map(String::as_str).zip(it.labels.iter().copied()))
                .unzip();
            let target = &items[held];
            match train_supervised::<F, _>(&texts, &labels, config) {
                Ok(model) => target.texts.iter().map(|t| model.classify(t)).collect(),
                Err(Error::SingleClass) => {
                    let constant = labels.first().copied().unwrap_or(false);
                    warn!("fold {}: single-class training data, predicting {constant}", target.news_id);
                    Ok(vec![constant; target.texts.len()])
                }
                Err(e) => Err(e),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::tokenize_tagged;
    use proptest::prelude::*;

    fn sentence(text: &str) -> TaggedSentence {
        TaggedSentence {
            news_id: "n".into(),
            segment: 0,
            sentence: 0,
            tokens: tokenize_tagged(text),
            original: text.into(),
            tagged: text.into(),
        }
    }

    #[test]
    fn test_rule_relevant_examples() {
        assert!(rule_relevant(&sentence("TICKER earnings were NUM")));
        assert!(!rule_relevant(&sentence("The market was calm")));
        assert!(!rule_relevant(&sentence("TICKER rose sharply")));
        assert!(rule_relevant(&sentence("TICKER_ABR gained NUM")));
        assert!(!rule_relevant(&sentence("PERSON said NUM")));
    }

    // hand parse: (sentence, main verb of the first clause is future)
    const MAIN_VERB: [(&str, bool); 20] = [
        ("TICKER will hit NUM", true),
        ("TICKER hit NUM", false),
        ("Analysts said TICKER will hit NUM", false),
        ("TICKER is going to report earnings", true),
        ("The company will not pay a dividend", true),
        ("Revenue grew NUM last quarter", false),
        ("We expect TICKER to rise", false),
        ("TICKER shares could fall NUM", false),
        ("If rates rise, TICKER will suffer", false),
        ("TICKER won't cut its forecast", true),
        ("Management has raised guidance", false),
        ("The stock was trading at NUM", false),
        ("It'll likely announce results", true),
        ("Investors are buying TICKER", false),
        ("TICKER shall remain profitable", true),
        ("The board approved a buyback, and TICKER will issue bonds", false),
        ("TICKER reports earnings on DATE", false),
        ("Shares will probably recover next year", true),
        ("They believe TICKER will beat estimates", false),
        ("TICKER had lost NUM before the rally", false),
    ];

    #[test]
    fn test_main_verb_hand_parse() {
        for (text, want) in MAIN_VERB {
            assert_eq!(rule_predictive(&sentence(text)), want, "{text}");
        }
    }

    #[test]
    fn test_verdict_independent() {
        let v = rule_verdict(&sentence("TICKER will rise"));
        assert!(v.predictive && !v.relevant);
    }

    #[test]
    fn test_supervised_separable() {
        use rand::{Rng, SeedableRng};
        // each class samples from its own vocabulary, keeping every n-gram under the df cap
        let pos: Vec<String> = (0..30).map(|i| format!("gain{i}")).collect();
        let neg: Vec<String> = (0..30).map(|i| format!("calm{i}")).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut texts = Vec::new();
        let mut labels = Vec::new();
        for i in 0..60 {
            let vocab = if i % 2 == 0 { &pos } else { &neg };
            let words: Vec<&str> = (0..6).map(|_| vocab[rng.gen_range(0..vocab.len())].as_str()).collect();
            texts.push(words.join(" "));
            labels.push(i % 2 == 0);
        }
        let config = ClassifierConfig::default();
        let model = train_supervised::<f64, _>(&texts, &labels, &config).unwrap();
        let correct = texts
            .iter()
            .zip(&labels)
            .filter(|(t, &l)| model.classify(t).unwrap() == l)
            .count();
        assert!(correct as f64 / texts.len() as f64 >= 0.99, "{correct}");
        let back = SupervisedModel::<f64>::from_json(&model.to_json().unwrap()).unwrap();
        assert_eq!(back.classify(&texts[0]).unwrap(), model.classify(&texts[0]).unwrap());
        assert!(matches!(
            train_supervised::<f64, _>(&texts[..1], &labels[..1], &config),
            Err(Error::SingleClass)
        ));
    }

    #[test]
    fn test_leave_one_out_single_class_fold() {
        let items = vec![
            LabeledItem { news_id: "a".into(), texts: vec!["TICKER grew NUM".into()], labels: vec![true] },
            LabeledItem { news_id: "b".into(), texts: vec!["sunny weather today".into()], labels: vec![false] },
        ];
        let out = leave_one_item_out::<f64>(&items, &ClassifierConfig::default()).unwrap();
        assert_eq!(out, vec![vec![false], vec![true]]);
    }

    fn tag_strategy() -> impl Strategy<Value = TagCategory> {
        prop::sample::select(TagCategory::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn prop_relevance_order_independent(tags in prop::collection::vec(tag_strategy(), 0..10), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut shuffled = tags.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let text = |t: &[TagCategory]| t.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" word ");
            prop_assert_eq!(rule_relevant_tags(tags.iter().copied()), rule_relevant_tags(shuffled.iter().copied()));
            prop_assert_eq!(rule_relevant(&sentence(&text(&tags))), rule_relevant(&sentence(&text(&shuffled))));
        }
    }
}
