//! Previously reported accuracies on related heart-disease data, shipped
//! as fixed reference rows for evaluation reports. Nothing here is computed.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LiteratureRow {
    pub study: &'static str,
    pub approach: &'static str,
    pub dataset: &'static str,
    /// Percent.
    pub accuracy: f64,
}

pub const ROWS: [LiteratureRow; 10] = [
    LiteratureRow {
        study: "Modak et al. (2022)",
        approach: "Multilayer perceptron",
        dataset: "Cleveland, Hungarian, Switzerland, Long Beach, and Statlog",
        accuracy: 87.70,
    },
    LiteratureRow {
        study: "Sarah et al. (2022)",
        approach: "Logistic regression",
        dataset: "Cleveland",
        accuracy: 85.25,
    },
    LiteratureRow {
        study: "Nguyen et al. (2021)",
        approach: "Naive Bayes, Logistic Regression, SVM and Decision Trees",
        dataset: "Cleveland",
        accuracy: 83.5,
    },
    LiteratureRow {
        study: "Latha et al. (2019)",
        approach: "Random Forest, Multilayer Perceptron, Bayes Net Naive Bayes",
        dataset: "Cleveland",
        accuracy: 84.49,
    },
    LiteratureRow {
        study: "Atallah et al. (2019)",
        approach: "(SGD)Classifier, K-Nearest Neighbor Classifier, Random Forest Classifier, Logistic Regression Classifier",
        dataset: "Cleveland",
        accuracy: 90.0,
    },
    LiteratureRow {
        study: "Pawlovsky (2018)",
        approach: "Weighted k-nearest neighbour",
        dataset: "Cleveland",
        accuracy: 84.83,
    },
    LiteratureRow {
        study: "Bialy et al. (2016)",
        approach: "Ensemble of FDT, C4.5, MLP, SVM, and Naive Bayes",
        dataset: "Cleveland",
        accuracy: 85.30,
    },
    LiteratureRow {
        study: "Miao et al. (2016)",
        approach: "Adaptive boosting",
        dataset: "UCI Repository",
        accuracy: 80.14,
    },
    LiteratureRow {
        study: "Bashir et al. (2014)",
        approach: "Memory-based learner, DT-IG, DT-GI, Ensemble of Naive Bayes, and SVM",
        dataset: "UCI Repository, ricco database",
        accuracy: 88.52,
    },
    LiteratureRow {
        study: "Detrano et al. (1989)",
        approach: "Logistic regression-based discriminant function",
        dataset: "Cleveland",
        accuracy: 77.00,
    },
];

/// `study,approach,dataset,accuracy_percent` with quoted text fields.
pub fn to_csv() -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["study", "approach", "dataset", "accuracy_percent"]).expect("in-memory write");
    for r in &ROWS {
        w.write_record([r.study, r.approach, r.dataset, &format!("{:.2}", r.accuracy)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
