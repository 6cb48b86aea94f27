#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nqsvdd/experiment.hpp"

namespace py = pybind11;
using namespace nqsvdd;

namespace {

py::array_t<std::complex<double>> cmat_to_numpy(const CMat& m) {
    py::array_t<std::complex<double>> out({m.rows(), m.cols()});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
    return out;
}

py::array_t<std::complex<double>> state_to_numpy(const PureState& psi) {
    py::array_t<std::complex<double>> out(psi.dim());
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < psi.dim(); ++i) buf(i) = psi[i];
    return out;
}

}  // namespace

PYBIND11_MODULE(_nqsvdd, m) {
    m.doc() = "NQSVDD hybrid quantum-classical one-class classification";

    m.def(
        "zz_embedding_state",
        [](const std::vector<double>& x, int n_qubits, int layers) {
            ZzEmbeddingSpec spec = ZzEmbeddingSpec::complete(n_qubits, layers);
            CircuitProgram p = zz_embedding(spec);
            return state_to_numpy(simulate(p, {}, x));
        },
        py::arg("features"), py::arg("n_qubits"), py::arg("layers") = 1,
        "Statevector of the ZZ-feature embedding applied to |0...0>.");

    m.def(
        "amplitude_encode",
        [](const std::vector<double>& x) {
            return state_to_numpy(amplitude_encode(x));
        },
        py::arg("values"));

    m.def(
        "su4_matrix",
        [](const std::vector<double>& angles) {
            return cmat_to_numpy(su4_matrix(angles));
        },
        py::arg("angles"),
        "4x4 matrix of the 15-parameter two-qubit block.");

    m.def(
        "u3_matrix",
        [](double theta, double phi, double lambda) {
            return cmat_to_numpy(u3_matrix(theta, phi, lambda));
        },
        py::arg("theta"), py::arg("phi"), py::arg("lambda"));

    m.def(
        "expectation",
        [](const std::vector<std::complex<double>>& amplitudes,
           const std::string& pauli) {
            int n = 0;
            while ((std::size_t{1} << n) < amplitudes.size()) ++n;
            PureState psi(n, std::vector<cplx>(amplitudes.begin(),
                                               amplitudes.end()));
            return expectation(psi, PauliString::from_name(pauli));
        },
        py::arg("amplitudes"), py::arg("pauli"));

    m.def(
        "select_observables",
        [](int n_f, int d) { return select_observables(n_f, d).names; },
        py::arg("n_f"), py::arg("d"));

    m.def(
        "count_parameters",
        [](const std::string& dataset, const std::string& variant,
           int latent_dim, int embed_layers) {
            auto pb = count_parameters(make_model_spec(
                dataset, variant_from_string(variant), latent_dim,
                embed_layers));
            py::dict out;
            out["classical"] = pb.classical;
            out["embed"] = pb.embed;
            out["qcnn"] = pb.qcnn;
            out["quantum"] = pb.quantum();
            out["total"] = pb.total();
            return out;
        },
        py::arg("dataset"), py::arg("variant"), py::arg("latent_dim") = -1,
        py::arg("embed_layers") = 3);

    m.def(
        "auc",
        [](const std::vector<double>& target_scores,
           const std::vector<double>& outlier_scores) {
            return auc(target_scores, outlier_scores);
        },
        py::arg("target_scores"), py::arg("outlier_scores"));

    m.def(
        "depolarizing2_kraus",
        [](double p) {
            std::vector<py::array_t<std::complex<double>>> out;
            for (const auto& k : depolarizing2_kraus(p))
                out.push_back(cmat_to_numpy(k));
            return out;
        },
        py::arg("p"));

    m.def(
        "thermal_relaxation_kraus",
        [](double t1, double t2, double t) {
            std::vector<py::array_t<std::complex<double>>> out;
            for (const auto& k : thermal_relaxation_kraus(t1, t2, t))
                out.push_back(cmat_to_numpy(k));
            return out;
        },
        py::arg("t1"), py::arg("t2"), py::arg("t"),
        "Kraus set of amplitude damping composed with pure dephasing; all "
        "three times share one unit.");

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("steps", &TrainConfig::steps)
        .def_readwrite("batch", &TrainConfig::batch)
        .def_readwrite("lr_max", &TrainConfig::lr_max)
        .def_readwrite("lr_min", &TrainConfig::lr_min)
        .def_readwrite("restart_period", &TrainConfig::restart_period)
        .def_readwrite("lambda_", &TrainConfig::lambda);

    py::class_<SvddModel>(m, "Model")
        .def(py::init([](const std::string& dataset, const std::string& variant,
                         std::uint64_t seed, int latent_dim,
                         int embed_layers) {
                 return SvddModel(
                     make_model_spec(dataset, variant_from_string(variant),
                                     latent_dim, embed_layers),
                     seed);
             }),
             py::arg("dataset"), py::arg("variant"), py::arg("seed") = 0,
             py::arg("latent_dim") = -1, py::arg("embed_layers") = 3)
        .def("enable_noise",
             [](SvddModel& self) { self.enable_noise(BackendParams{}); })
        .def("latent",
             [](const SvddModel& self, const std::vector<double>& x) {
                 return self.latent_of(x);
             })
        .def("init_center", &SvddModel::init_center)
        .def("train",
             [](SvddModel& self,
                const std::vector<std::vector<double>>& train_x,
                const TrainConfig& cfg) {
                 TrainResult r = self.train(train_x, cfg);
                 py::dict out;
                 out["loss_history"] = r.loss_history;
                 out["r2star"] = r.r2star;
                 return out;
             },
             py::arg("train_x"), py::arg("config") = TrainConfig{})
        .def("score",
             [](const SvddModel& self, const std::vector<double>& x) {
                 return self.score(x);
             })
        .def_property_readonly("center", &SvddModel::center)
        .def_property_readonly("observables",
                               [](const SvddModel& self) {
                                   return self.observable_names().names;
                               })
        .def_property_readonly("r2star", &SvddModel::r2star)
        .def_property_readonly("theta", &SvddModel::theta);

    m.def(
        "make_toy_task",
        [](std::uint64_t seed, int train, int test_target, int test_outlier) {
            TaskSizes sizes;
            sizes.train = train;
            sizes.test_target = test_target;
            sizes.test_outlier = test_outlier;
            OccTask t = make_toy_task(seed, sizes);
            py::dict out;
            out["train_x"] = t.train_x;
            out["test_x"] = t.test_x;
            out["test_is_outlier"] = t.test_is_outlier;
            return out;
        },
        py::arg("seed") = 0, py::arg("train") = 60, py::arg("test_target") = 30,
        py::arg("test_outlier") = 30);

    m.def(
        "run_experiment",
        [](const std::string& config_json) {
            RunOutput out = run_experiment(
                ExperimentConfig::from_json_text(config_json));
            py::list rows;
            for (const auto& r : out.rows) {
                py::dict d;
                d["dataset"] = r.dataset;
                d["variant"] = r.variant;
                d["target"] = r.target;
                d["seed"] = r.seed;
                d["auc"] = r.auc;
                d["params"] = r.params;
                d["wall_time_s"] = r.wall_time_s;
                rows.append(d);
            }
            py::dict result;
            result["rows"] = rows;
            result["manifest"] = out.manifest_path;
            result["results_csv"] = out.results_path;
            result["summary_csv"] = out.summary_path;
            return result;
        },
        py::arg("config_json"),
        "Run a full experiment from a JSON config string; returns row dicts "
        "and output paths.");
}
