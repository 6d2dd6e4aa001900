#include "depkit/infer/predict.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "depkit/corpus/normalize.hpp"
#include "depkit/util/jsonl.hpp"
#include "depkit/util/strings.hpp"

namespace depkit::infer {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Spaces request starts at 1/rate seconds apart across worker threads.
class RateGate {
public:
    explicit RateGate(double max_per_s) {
        if (max_per_s > 0) {
            interval_ = std::chrono::duration<double>(1.0 / max_per_s);
        }
    }

    void wait() {
        if (interval_.count() <= 0) return;
        std::unique_lock<std::mutex> lock(mu_);
        auto now = Clock::now();
        if (next_ > now) {
            auto wake = next_;
            next_ += std::chrono::duration_cast<Clock::duration>(interval_);
            lock.unlock();
            std::this_thread::sleep_until(wake);
        } else {
            next_ = now + std::chrono::duration_cast<Clock::duration>(interval_);
        }
    }

private:
    std::mutex mu_;
    Clock::time_point next_ = Clock::now();
    std::chrono::duration<double> interval_{0};
};

}  // namespace

std::string to_string(PredictionLabel l) {
    switch (l) {
        case PredictionLabel::DEPRESSED: return "depressed";
        case PredictionLabel::NON_DEPRESSED: return "non_depressed";
        case PredictionLabel::UNPARSED: return "unparsed";
        case PredictionLabel::FAILED: return "failed";
    }
    throw std::logic_error("unreachable");
}

PredictionLabel prediction_label_from_string(const std::string& s) {
    if (s == "depressed") return PredictionLabel::DEPRESSED;
    if (s == "non_depressed") return PredictionLabel::NON_DEPRESSED;
    if (s == "unparsed") return PredictionLabel::UNPARSED;
    if (s == "failed") return PredictionLabel::FAILED;
    throw std::invalid_argument("unknown prediction label: " + s);
}

std::vector<Prediction> predict_batch_local(const trainer::ReferenceBackend& model,
                                            const std::vector<corpus::Post>& posts) {
    if (posts.empty()) throw std::invalid_argument("predict_batch: no posts");
    std::vector<Prediction> out;
    out.reserve(posts.size());
    for (const auto& post : posts) {
        const auto t0 = Clock::now();
        const double p = model.predict_proba(corpus::normalize_text(post.text));
        Prediction pred;
        pred.post_id = post.id;
        pred.label = p > 0.5 ? PredictionLabel::DEPRESSED : PredictionLabel::NON_DEPRESSED;
        pred.raw_output = "p=" + util::format_fixed(p, 6);
        pred.latency_ms = ms_since(t0);
        out.push_back(std::move(pred));
    }
    return out;
}

std::vector<Prediction> predict_batch_hosted(const hosted::HostedClient& client,
                                             const std::string& model_id,
                                             const std::vector<corpus::Post>& posts,
                                             const PromptTemplate& tmpl,
                                             const HostedPredictOptions& options) {
    if (posts.empty()) throw std::invalid_argument("predict_batch: no posts");
    validate_template(tmpl);
    if (options.max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");

    std::vector<Prediction> out(posts.size());
    RateGate gate(options.max_requests_per_s);
    std::atomic<size_t> cursor{0};

    auto worker = [&] {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= posts.size()) return;
            const corpus::Post& post = posts[i];
            Prediction pred;
            pred.post_id = post.id;
            gate.wait();
            const auto t0 = Clock::now();
            try {
                // normalized like the training data; also keeps mentions and
                // URLs from leaving the machine
                std::string reply = client.complete(
                    model_id, render_prompt(tmpl, corpus::normalize_text(post.text)));
                pred.raw_output = reply;
                switch (parse_label(reply, tmpl)) {
                    case ParsedLabel::DEPRESSED: pred.label = PredictionLabel::DEPRESSED; break;
                    case ParsedLabel::NON_DEPRESSED:
                        pred.label = PredictionLabel::NON_DEPRESSED;
                        break;
                    case ParsedLabel::UNPARSED: pred.label = PredictionLabel::UNPARSED; break;
                }
            } catch (const std::exception& e) {
                pred.label = PredictionLabel::FAILED;
                pred.raw_output = e.what();
            }
            pred.latency_ms = ms_since(t0);
            out[i] = std::move(pred);  // slot i belongs to this worker only
        }
    };

    const size_t n_threads = std::min<size_t>(options.max_in_flight, posts.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

void write_predictions_jsonl(const std::vector<Prediction>& predictions,
                             const std::string& path) {
    std::ostringstream out;
    for (const auto& p : predictions) {
        out << nlohmann::json{{"post_id", p.post_id},
                              {"label", to_string(p.label)},
                              {"raw_output", p.raw_output},
                              {"latency_ms", p.latency_ms}}
                   .dump()
            << '\n';
    }
    util::write_file_atomic(path, out.str());
}

std::vector<Prediction> read_predictions_jsonl(const std::string& path) {
    std::vector<Prediction> out;
    util::for_each_jsonl(path, [&](size_t lineno, const nlohmann::json& j) {
        const std::string where = path + ":" + std::to_string(lineno);
        Prediction p;
        try {
            p.post_id = j.at("post_id").get<std::string>();
            p.label = prediction_label_from_string(j.at("label").get<std::string>());
            p.raw_output = j.value("raw_output", std::string{});
            p.latency_ms = j.value("latency_ms", 0.0);
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        out.push_back(std::move(p));
    });
    if (out.empty()) throw std::runtime_error(path + ": no predictions");
    return out;
}

}  // namespace depkit::infer
