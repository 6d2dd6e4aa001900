#include "depkit/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"

#include "depkit/cli/manifest.hpp"
#include "depkit/corpus/build.hpp"
#include "depkit/corpus/chat_format.hpp"
#include "depkit/corpus/io.hpp"
#include "depkit/corpus/split.hpp"
#include "depkit/eval/report.hpp"
#include "depkit/hosted/client.hpp"
#include "depkit/hosted/mock_provider.hpp"
#include "depkit/infer/predict.hpp"
#include "depkit/trainer/reference_backend.hpp"
#include "depkit/trainer/train_loop.hpp"
#include "depkit/util/hash.hpp"
#include "depkit/util/jsonl.hpp"
#include "depkit/util/strings.hpp"

namespace depkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string joined(const fs::path& dir, const std::string& name) {
    return (dir / name).string();
}

std::optional<std::string> env_value(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

void require_file(const std::string& path, const std::string& what) {
    if (!fs::exists(path)) {
        throw std::invalid_argument(what + " not found: " + path);
    }
}

// Maps exceptions onto the exit-code contract: remote errors 3, validation 2.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const hosted::TransportError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRemote;
    } catch (const hosted::ProviderError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRemote;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

std::map<std::string, std::string> template_config(const infer::PromptTemplate& t) {
    return {{"system_instruction", t.system_instruction},
            {"user_wrapper", t.user_wrapper},
            {"positive_keyword", t.positive_keyword},
            {"negative_keyword", t.negative_keyword}};
}

}  // namespace

infer::PromptTemplate TemplateArgs::resolve() const {
    infer::PromptTemplate t;
    if (system_instruction) t.system_instruction = *system_instruction;
    if (user_wrapper) t.user_wrapper = *user_wrapper;
    if (positive_keyword) t.positive_keyword = *positive_keyword;
    if (negative_keyword) t.negative_keyword = *negative_keyword;
    infer::validate_template(t);
    return t;
}

int cmd_curate(const CurateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_file(args.posts_path, "posts file");
        require_file(args.emoji_lib_path, "emoji library");

        auto users = corpus::read_posts_jsonl(args.posts_path);
        auto lib = corpus::EmojiSentimentLibrary::load_tsv(args.emoji_lib_path);

        corpus::AnchorRuleSet rules = corpus::default_anchor_rules();
        for (const auto& p : args.extra_diagnosis_patterns) rules.diagnosis_patterns.push_back(p);
        rules.exclusion_substring = args.anchor_term;
        rules.candidate_substring = args.anchor_term;

        util::TimeWindow window{util::parse_iso8601_utc(args.window_start),
                                util::parse_iso8601_utc(args.window_end)};
        if (window.end <= window.start) {
            throw std::invalid_argument("window end must be after window start");
        }

        std::map<std::string, corpus::Label> reviewed;
        if (args.d3_labels_path) {
            require_file(*args.d3_labels_path, "D3 labels file");
            reviewed = corpus::read_d3_labels_tsv(*args.d3_labels_path);
        }

        auto built = corpus::build_corpus(users, rules, window, lib, reviewed);
        auto corpus = corpus::split_corpus(
            std::move(built.corpus), {args.ratio_train, args.ratio_val, args.ratio_test},
            args.seed);

        fs::create_directories(args.out_dir);
        const std::string corpus_path = joined(args.out_dir, "corpus.jsonl");
        const std::string queue_path = joined(args.out_dir, "review_queue.jsonl");
        const std::string stats_path = joined(args.out_dir, "stats.json");

        corpus::write_corpus_jsonl(corpus, corpus_path);
        corpus::write_review_queue_jsonl(built.review_queue, queue_path);

        std::map<std::string, std::map<std::string, size_t>> split_counts;
        for (const auto& ex : corpus.examples) {
            auto it = corpus.splits.find(ex.post.id);
            if (it == corpus.splits.end()) continue;
            ++split_counts[corpus::to_string(it->second)][corpus::to_string(ex.label)];
        }
        json stats{{"examples", corpus.examples.size()},
                   {"users_seen", built.stats.users_seen},
                   {"users_skipped_empty", built.stats.users_skipped_empty},
                   {"posts_seen", built.stats.posts_seen},
                   {"d1_auto_labeled", built.stats.d1_auto_labeled},
                   {"d2_auto_labeled", built.stats.d2_auto_labeled},
                   {"d3_labeled", built.stats.d3_labeled},
                   {"d3_queued", built.stats.d3_queued},
                   {"unlabeled", built.stats.unlabeled},
                   {"split_seed", corpus.split_seed},
                   {"split_counts", split_counts}};
        util::write_file_atomic(stats_path, stats.dump(2) + "\n");

        ManifestWriter manifest(joined(args.out_dir, "manifest.json"), "curate");
        manifest.set_config({{"anchor_term", args.anchor_term},
                             {"window_start", args.window_start},
                             {"window_end", args.window_end},
                             {"ratios", util::format_fixed(args.ratio_train, 3) + "/" +
                                            util::format_fixed(args.ratio_val, 3) + "/" +
                                            util::format_fixed(args.ratio_test, 3)},
                             {"seed", std::to_string(args.seed)},
                             {"extra_diagnosis_patterns",
                              std::to_string(args.extra_diagnosis_patterns.size())}});
        manifest.add_input(args.posts_path);
        manifest.add_input(args.emoji_lib_path);
        if (args.d3_labels_path) manifest.add_input(*args.d3_labels_path);
        manifest.start();
        manifest.add_artifact(corpus_path);
        manifest.add_artifact(queue_path);
        manifest.add_artifact(stats_path);
        manifest.finalize("ok");

        out << "curated " << corpus.examples.size() << " examples ("
            << built.stats.d1_auto_labeled << " D1, " << built.stats.d2_auto_labeled << " D2, "
            << built.stats.d3_labeled << " reviewed D3); review queue: "
            << built.stats.d3_queued << "\n";
        return kExitOk;
    });
}

int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_file(args.corpus_path, "corpus file");
        if (args.out_path.empty()) throw std::invalid_argument("--out is required");
        auto corpus = corpus::read_corpus_jsonl(args.corpus_path);
        auto tmpl = args.tmpl.resolve();

        ManifestWriter manifest(args.out_path + ".manifest.json", "export");
        auto config = template_config(tmpl);
        config["split"] = args.split;
        manifest.set_config(std::move(config));
        manifest.add_input(args.corpus_path);
        manifest.start();

        auto stats = corpus::export_chat_jsonl(corpus, corpus::split_from_string(args.split),
                                               tmpl, args.out_path);
        manifest.add_artifact(args.out_path);
        manifest.finalize("ok");

        out << "wrote " << stats.written << " records to " << args.out_path;
        if (stats.skipped_empty > 0) out << " (skipped " << stats.skipped_empty << " empty)";
        out << "\n";
        return kExitOk;
    });
}

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_file(args.corpus_path, "corpus file");
        trainer::ConfigFile cfg;
        if (args.config_path) {
            require_file(*args.config_path, "config file");
            cfg = trainer::load_config_file(*args.config_path);
        }
        if (args.epochs) cfg.train.num_train_epochs = *args.epochs;
        if (args.learning_rate) cfg.train.learning_rate = *args.learning_rate;
        if (args.lora_dropout) cfg.lora.lora_dropout = *args.lora_dropout;
        if (args.lora_r) cfg.lora.r = *args.lora_r;
        if (args.seed) cfg.train.seed = *args.seed;
        trainer::validate_configs(cfg.lora, cfg.train);  // fail before touching any data

        auto corpus = corpus::read_corpus_jsonl(args.corpus_path);

        fs::create_directories(args.out_dir);
        const fs::path ckpt_dir = fs::path(args.out_dir) / "checkpoints";
        fs::create_directories(ckpt_dir);

        ManifestWriter manifest(joined(args.out_dir, "manifest.json"), "train");
        std::map<std::string, std::string> config_map;
        {
            std::istringstream dump(trainer::dump_config(cfg.lora, cfg.train));
            std::string line;
            while (std::getline(dump, line)) {
                auto eq = line.find(" = ");
                if (eq != std::string::npos) {
                    config_map[line.substr(0, eq)] = line.substr(eq + 3);
                }
            }
        }
        config_map["vocab_size"] = std::to_string(args.vocab_size);
        manifest.set_config(config_map);
        manifest.add_input(args.corpus_path);
        manifest.start();

        trainer::ReferenceBackend backend(args.vocab_size, cfg.train.learning_rate,
                                          cfg.train.seed);
        std::vector<std::string> checkpoint_paths;
        auto sink = [&](int epoch, const json& state) {
            const std::string path =
                (ckpt_dir / ("epoch-" + std::to_string(epoch) + ".json")).string();
            util::write_file_atomic(path, state.dump() + "\n");
            checkpoint_paths.push_back(path);
        };

        auto result = trainer::train(backend, corpus, cfg.lora, cfg.train, sink);

        const std::string loss_path = joined(args.out_dir, "loss.csv");
        if (!result.metrics.empty()) {
            trainer::export_loss_csv(result.metrics, loss_path);
            manifest.add_artifact(loss_path);
        }
        for (const auto& p : checkpoint_paths) manifest.add_artifact(p);

        if (result.failed) {
            manifest.set_output("failure", result.failure);
            manifest.set_output("failed_epoch", std::to_string(result.failed_epoch));
            manifest.finalize("failed");
            err << "training aborted at epoch " << result.failed_epoch << ": " << result.failure
                << "\n";
            return 1;
        }

        if (args.prune_to_best && !result.metrics.empty()) {
            auto best = std::min_element(result.metrics.begin(), result.metrics.end(),
                                         [](const auto& a, const auto& b) {
                                             return a.val_loss < b.val_loss;
                                         });
            const std::string keep = "epoch-" + std::to_string(best->epoch) + ".json";
            for (const auto& p : checkpoint_paths) {
                if (fs::path(p).filename() != keep) fs::remove(p);
            }
            out << "pruned checkpoints to best val epoch " << best->epoch << "\n";
        }

        json summary{{"backend", result.model.backend_id},
                     {"config_fingerprint", result.model.config_fingerprint},
                     {"epochs", result.metrics.size()},
                     {"final_train_loss", result.metrics.back().train_loss},
                     {"final_val_loss", result.metrics.back().val_loss},
                     {"full_val_loss", result.full_val_loss}};
        const std::string summary_path = joined(args.out_dir, "summary.json");
        util::write_file_atomic(summary_path, summary.dump(2) + "\n");
        manifest.add_artifact(summary_path);
        manifest.set_output("config_fingerprint", result.model.config_fingerprint);
        manifest.finalize("ok");

        out << "trained " << result.metrics.size() << " epochs; final train loss "
            << util::format_fixed(result.metrics.back().train_loss, 6) << ", val loss "
            << util::format_fixed(result.metrics.back().val_loss, 6) << ", full val loss "
            << util::format_fixed(result.full_val_loss, 6) << "\n";
        return kExitOk;
    });
}

int cmd_finetune_hosted(const FinetuneHostedArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto credential = env_value(kCredentialEnv);
        if (!credential) {
            throw std::invalid_argument(std::string("provider credential missing: set ") +
                                        kCredentialEnv);
        }
        auto base_url = args.base_url ? args.base_url : env_value(kBaseUrlEnv);
        if (!base_url) {
            throw std::invalid_argument(std::string("provider base URL missing: pass "
                                                    "--base-url or set ") +
                                        kBaseUrlEnv);
        }
        require_file(args.training_file, "training file");
        hosted::HostedHyperparams hp{args.n_epochs, args.batch_size,
                                     args.learning_rate_multiplier};
        hosted::validate_hyperparams(hp);

        fs::create_directories(args.out_dir);
        const std::string manifest_path = joined(args.out_dir, "manifest.json");
        const std::string file_hash = util::sha256_file_hex(args.training_file);
        if (!args.force) {
            if (auto previous = load_manifest(manifest_path);
                previous && previous->status == "ok" && previous->command == "finetune-hosted") {
                auto it = previous->input_hashes.find(args.training_file);
                if (it != previous->input_hashes.end() && it->second == file_hash) {
                    throw std::invalid_argument(
                        "job for this training file already completed (model " +
                        previous->outputs.at("fine_tuned_model_id") +
                        "); pass --force to create another job");
                }
            }
        }

        hosted::ProviderEndpoint endpoint;
        endpoint.base_url = *base_url;
        endpoint.credential = *credential;
        endpoint.max_retries = args.max_retries;
        hosted::HostedClient client(endpoint, hosted::make_http_transport(endpoint));

        ManifestWriter manifest(manifest_path, "finetune-hosted");
        manifest.set_config(
            {{"base_model", args.base_model},
             {"n_epochs", std::to_string(hp.n_epochs)},
             {"batch_size", std::to_string(hp.batch_size)},
             {"learning_rate_multiplier", util::format_fixed(hp.learning_rate_multiplier, 6)},
             {"base_url", *base_url}});
        manifest.add_input(args.training_file);
        manifest.start();

        out << "uploading " << args.training_file << "\n";
        const std::string file_id = client.upload_training_file(args.training_file);
        manifest.set_output("training_file_id", file_id);

        auto job = client.create_job(file_id, hp, args.base_model);
        manifest.set_output("job_id", job.job_id);
        out << "created job " << job.job_id << " (status " << hosted::to_string(job.status)
            << ")\n";

        auto poll = client.poll_job(job.job_id, std::chrono::milliseconds(args.poll_interval_ms),
                                    std::chrono::seconds(args.deadline_s));
        manifest.set_output("last_status", hosted::to_string(poll.job.status));
        if (poll.timed_out) {
            manifest.finalize("timeout");
            err << "deadline exceeded; last status " << hosted::to_string(poll.job.status)
                << "\n";
            return kExitRemote;
        }
        if (poll.job.status != hosted::JobStatus::SUCCEEDED) {
            if (poll.job.provider_error) {
                manifest.set_output("provider_error", *poll.job.provider_error);
            }
            manifest.finalize("failed");
            err << "job ended " << hosted::to_string(poll.job.status);
            if (poll.job.provider_error) err << ": " << *poll.job.provider_error;
            err << "\n";
            return kExitRemote;
        }
        manifest.set_output("fine_tuned_model_id", *poll.job.fine_tuned_model_id);
        manifest.finalize("ok");
        out << "fine-tuned model: " << *poll.job.fine_tuned_model_id << "\n";
        return kExitOk;
    });
}

int cmd_predict(const PredictArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (args.checkpoint_path.has_value() == args.hosted_model.has_value()) {
            throw std::invalid_argument("pass exactly one of --checkpoint or --hosted-model");
        }
        std::vector<corpus::Post> posts;
        if (args.posts_path) {
            require_file(*args.posts_path, "posts file");
            for (auto& user : corpus::read_posts_jsonl(*args.posts_path)) {
                for (auto& p : user.posts) posts.push_back(std::move(p));
            }
        } else if (args.corpus_path) {
            require_file(*args.corpus_path, "corpus file");
            auto corpus = corpus::read_corpus_jsonl(*args.corpus_path);
            for (const auto* ex : corpus.split_view(corpus::split_from_string(args.split))) {
                posts.push_back(ex->post);
            }
        } else {
            throw std::invalid_argument("pass --posts or --corpus");
        }
        if (posts.empty()) throw std::invalid_argument("no posts to predict");
        std::sort(posts.begin(), posts.end(),
                  [](const corpus::Post& a, const corpus::Post& b) { return a.id < b.id; });

        std::vector<infer::Prediction> predictions;
        if (args.checkpoint_path) {
            require_file(*args.checkpoint_path, "checkpoint");
            auto state = json::parse(util::read_file(*args.checkpoint_path));
            auto model = trainer::ReferenceBackend::from_state(state);
            predictions = infer::predict_batch_local(model, posts);
        } else {
            auto credential = env_value(kCredentialEnv);
            if (!credential) {
                throw std::invalid_argument(std::string("provider credential missing: set ") +
                                            kCredentialEnv);
            }
            auto base_url = args.base_url ? args.base_url : env_value(kBaseUrlEnv);
            if (!base_url) {
                throw std::invalid_argument(std::string("provider base URL missing: pass "
                                                        "--base-url or set ") +
                                            kBaseUrlEnv);
            }
            hosted::ProviderEndpoint endpoint;
            endpoint.base_url = *base_url;
            endpoint.credential = *credential;
            endpoint.max_retries = args.max_retries;
            hosted::HostedClient client(endpoint, hosted::make_http_transport(endpoint));
            infer::HostedPredictOptions options;
            options.max_requests_per_s = args.max_requests_per_s;
            options.max_in_flight = args.max_in_flight;
            predictions = infer::predict_batch_hosted(client, *args.hosted_model, posts,
                                                      args.tmpl.resolve(), options);
        }

        infer::write_predictions_jsonl(predictions, args.out_path);
        size_t unparsed = 0, failed = 0;
        for (const auto& p : predictions) {
            unparsed += p.label == infer::PredictionLabel::UNPARSED;
            failed += p.label == infer::PredictionLabel::FAILED;
        }

        ManifestWriter manifest(args.out_path + ".manifest.json", "predict");
        manifest.set_config(
            {{"mode", args.checkpoint_path ? "local" : "hosted"},
             {"model", args.checkpoint_path ? *args.checkpoint_path : *args.hosted_model},
             {"split", args.corpus_path ? args.split : std::string("-")},
             {"rate", util::format_fixed(args.max_requests_per_s, 3)},
             {"concurrency", std::to_string(args.max_in_flight)}});
        if (args.posts_path) manifest.add_input(*args.posts_path);
        if (args.corpus_path) manifest.add_input(*args.corpus_path);
        if (args.checkpoint_path) manifest.add_input(*args.checkpoint_path);
        manifest.start();
        manifest.add_artifact(args.out_path);
        manifest.set_output("unparsed", std::to_string(unparsed));
        manifest.set_output("failed", std::to_string(failed));
        manifest.finalize("ok");

        out << "wrote " << predictions.size() << " predictions to " << args.out_path
            << " (unparsed " << unparsed << ", failed " << failed << ")\n";
        return kExitOk;
    });
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_file(args.predictions_path, "predictions file");
        require_file(args.corpus_path, "corpus file");
        auto predictions = infer::read_predictions_jsonl(args.predictions_path);
        auto corpus = corpus::read_corpus_jsonl(args.corpus_path);

        std::map<std::string, corpus::Label> gold;
        if (args.split == "all") {
            for (const auto& ex : corpus.examples) gold.emplace(ex.post.id, ex.label);
        } else {
            for (const auto* ex : corpus.split_view(corpus::split_from_string(args.split))) {
                gold.emplace(ex->post.id, ex->label);
            }
        }

        std::set<std::string> pred_ids, gold_ids;
        for (const auto& p : predictions) pred_ids.insert(p.post_id);
        for (const auto& [id, _] : gold) gold_ids.insert(id);
        if (pred_ids != gold_ids) {
            std::vector<std::string> offenders;
            std::set_symmetric_difference(pred_ids.begin(), pred_ids.end(), gold_ids.begin(),
                                          gold_ids.end(), std::back_inserter(offenders));
            std::ostringstream msg;
            msg << "prediction/gold id sets differ (" << offenders.size() << " ids); first:";
            for (size_t i = 0; i < offenders.size() && i < 10; ++i) msg << ' ' << offenders[i];
            throw std::invalid_argument(msg.str());
        }

        std::vector<eval::Label> pred_labels, gold_labels;
        size_t unparsed = 0, failed = 0;
        for (const auto& p : predictions) {
            const corpus::Label g = gold.at(p.post_id);
            if (p.label == infer::PredictionLabel::UNPARSED ||
                p.label == infer::PredictionLabel::FAILED) {
                unparsed += p.label == infer::PredictionLabel::UNPARSED;
                failed += p.label == infer::PredictionLabel::FAILED;
                if (!args.strict_unparsed) continue;
                // strict: an unusable answer counts as the wrong prediction
                pred_labels.push_back(g == eval::Label::DEPRESSED ? eval::Label::NON_DEPRESSED
                                                                  : eval::Label::DEPRESSED);
                gold_labels.push_back(g);
                continue;
            }
            pred_labels.push_back(p.label == infer::PredictionLabel::DEPRESSED
                                      ? eval::Label::DEPRESSED
                                      : eval::Label::NON_DEPRESSED);
            gold_labels.push_back(g);
        }
        if (pred_labels.empty()) {
            throw std::invalid_argument("no scorable predictions (all unparsed or failed)");
        }

        auto cm = eval::confusion(pred_labels, gold_labels);
        auto report = eval::metrics_report(cm, args.model_name);

        fs::create_directories(args.out_dir);
        ManifestWriter manifest(joined(args.out_dir, "manifest.json"), "evaluate");
        manifest.set_config({{"split", args.split},
                             {"model_name", args.model_name},
                             {"strict_unparsed", args.strict_unparsed ? "true" : "false"}});
        manifest.add_input(args.predictions_path);
        manifest.add_input(args.corpus_path);
        manifest.start();
        auto opt_json = [](const std::optional<double>& v) {
            return v ? json(*v) : json();
        };
        json metrics{{"model_name", report.model_name},
                     {"n", report.n},
                     {"tp", cm.tp},
                     {"tn", cm.tn},
                     {"fp", cm.fp},
                     {"fn", cm.fn},
                     {"precision", opt_json(report.precision)},
                     {"recall", opt_json(report.recall)},
                     {"f1", opt_json(report.f1)},
                     {"accuracy", opt_json(report.accuracy)},
                     {"unparsed", unparsed},
                     {"failed", failed},
                     {"unparsed_rate", static_cast<double>(unparsed) / predictions.size()},
                     {"strict_unparsed", args.strict_unparsed}};
        const std::string metrics_path = joined(args.out_dir, "metrics.json");
        util::write_file_atomic(metrics_path, metrics.dump(2) + "\n");
        const std::string cm_path = joined(args.out_dir, "confusion.csv");
        util::write_file_atomic(cm_path, eval::confusion_csv(cm));
        manifest.add_artifact(metrics_path);
        manifest.add_artifact(cm_path);
        manifest.finalize("ok");

        out << eval::render_report({report}, eval::ReportFormat::TEXT);
        out << "unparsed " << unparsed << ", failed " << failed << " of " << predictions.size()
            << "\n";
        return kExitOk;
    });
}

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (args.inputs.empty()) throw std::invalid_argument("pass at least one --in file");
        std::vector<eval::MetricsReport> rows;
        auto add_row = [&](const json& j, const std::string& where) {
            if (!j.is_object()) throw std::runtime_error(where + ": row must be an object");
            eval::MetricsReport r;
            if (j.contains("model_name")) r.model_name = j["model_name"].get<std::string>();
            else if (j.contains("model")) r.model_name = j["model"].get<std::string>();
            else throw std::runtime_error(where + ": row needs model or model_name");
            auto num = [&](const char* key) -> std::optional<double> {
                if (!j.contains(key) || j[key].is_null()) return std::nullopt;
                return j[key].get<double>();
            };
            r.precision = num("precision");
            r.recall = num("recall");
            r.f1 = num("f1");
            r.accuracy = num("accuracy");
            if (j.contains("n")) r.n = j["n"].get<std::int64_t>();
            rows.push_back(std::move(r));
        };
        for (const auto& path : args.inputs) {
            require_file(path, "metrics file");
            json j = json::parse(util::read_file(path));
            if (j.is_array()) {
                for (const auto& item : j) add_row(item, path);
            } else {
                add_row(j, path);
            }
        }

        const auto format =
            args.format == "csv" ? eval::ReportFormat::CSV : eval::ReportFormat::TEXT;
        if (args.format != "csv" && args.format != "text") {
            throw std::invalid_argument("format must be text or csv");
        }
        const std::string rendered = eval::render_report(rows, format);

        for (const auto& csv : args.loss_csvs) {
            require_file(csv, "loss CSV");
            const std::string content = util::read_file(csv);
            if (content.rfind("epoch,train_loss,val_loss\n", 0) != 0) {
                throw std::invalid_argument(csv + ": not a loss CSV (bad header)");
            }
            fs::create_directories(args.out_dir);
            const std::string dest = joined(args.out_dir, fs::path(csv).filename().string());
            if (fs::absolute(dest) != fs::absolute(csv)) {
                util::write_file_atomic(dest, content);
            }
        }

        if (args.out_path) {
            ManifestWriter manifest(*args.out_path + ".manifest.json", "report");
            manifest.set_config({{"format", args.format}});
            for (const auto& path : args.inputs) manifest.add_input(path);
            manifest.start();
            util::write_file_atomic(*args.out_path, rendered);
            manifest.add_artifact(*args.out_path);
            manifest.finalize("ok");
            out << "wrote report to " << *args.out_path << "\n";
        } else {
            out << rendered;
        }
        return kExitOk;
    });
}

int cmd_mock_provider(const MockProviderArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        hosted::MockScript script;
        if (args.script_path) {
            require_file(*args.script_path, "script file");
            script = hosted::MockScript::from_file(*args.script_path);
        }
        auto provider = std::make_shared<hosted::MockProvider>(script);
        hosted::MockServer server(provider, args.port);
        out << "mock provider listening on " << server.base_url() << std::endl;
        server.wait();  // runs until the process is killed
        return kExitOk;
    });
}

}  // namespace depkit::cli
