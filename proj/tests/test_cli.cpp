#include "doctest.h"

#include <memory>

#include "json.hpp"

#include "depkit/corpus/io.hpp"
#include "depkit/hosted/mock_provider.hpp"
#include "depkit/infer/predict.hpp"
#include "depkit/util/hash.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace depkit;
using nlohmann::json;
using testsupport::fixture_path;
using testsupport::run_cli;
using testsupport::TempDir;

TEST_CASE("cli: --help exits 0 with usage text") {
    auto top = run_cli("--help");
    CHECK(top.exit_code == 0);
    CHECK(top.output.find("curate") != std::string::npos);

    auto sub = run_cli("curate --help");
    CHECK(sub.exit_code == 0);
    CHECK(sub.output.find("--posts") != std::string::npos);

    auto mock_help = run_cli("mock-provider --help");
    CHECK(mock_help.exit_code == 0);
}

TEST_CASE("cli: unknown flags and missing subcommand exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("curate --no-such-flag").exit_code == 2);
}

TEST_CASE("cli curate on the golden twenty") {
    TempDir tmp;
    const std::string out_dir = tmp.file("out");
    const std::string base = "curate --posts " + fixture_path("posts_golden20.jsonl") +
                             " --emoji-lib " + fixture_path("emoji_library.tsv") + " --out-dir " +
                             out_dir + " --train-ratio 0.5 --val-ratio 0.25 --test-ratio 0.25";

    SUBCASE("auto-labels only") {
        auto result = run_cli(base);
        CAPTURE(result.output);
        REQUIRE(result.exit_code == 0);

        auto stats = json::parse(testsupport::slurp(out_dir + "/stats.json"));
        // counting oracle over the fixture's known classifications
        CHECK(stats["examples"] == 12);
        CHECK(stats["d1_auto_labeled"] == 5);
        CHECK(stats["d2_auto_labeled"] == 7);
        CHECK(stats["d3_queued"] == 5);
        CHECK(stats["unlabeled"] == 3);
        CHECK(stats["users_seen"] == 12);

        auto corpus = corpus::read_corpus_jsonl(out_dir + "/corpus.jsonl");
        CHECK(corpus.examples.size() == 12);
        auto manifest = json::parse(testsupport::slurp(out_dir + "/manifest.json"));
        CHECK(manifest["status"] == "ok");
        CHECK(manifest["command"] == "curate");
    }

    SUBCASE("reviewed D3 labels extend the corpus") {
        auto result = run_cli(base + " --d3-labels " + fixture_path("d3_labels_golden.tsv"));
        REQUIRE(result.exit_code == 0);
        auto stats = json::parse(testsupport::slurp(out_dir + "/stats.json"));
        CHECK(stats["examples"] == 15);
        CHECK(stats["d3_labeled"] == 3);
        CHECK(stats["d3_queued"] == 2);
    }

    SUBCASE("identical reruns produce identical artifacts") {
        auto r1 = run_cli(base);
        REQUIRE(r1.exit_code == 0);
        auto hash1 = util::sha256_file_hex(out_dir + "/corpus.jsonl");
        auto r2 = run_cli(base);
        REQUIRE(r2.exit_code == 0);
        CHECK(util::sha256_file_hex(out_dir + "/corpus.jsonl") == hash1);
    }
}

TEST_CASE("cli curate validation failures exit 2") {
    TempDir tmp;
    auto missing = run_cli("curate --posts " + fixture_path("posts_golden20.jsonl") +
                           " --emoji-lib " + tmp.file("nope.tsv") + " --out-dir " +
                           tmp.file("out"));
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("nope.tsv") != std::string::npos);

    const std::string bad_posts = tmp.file("bad.jsonl");
    testsupport::spit(bad_posts, "{\"id\":\"x\"}\n");
    auto bad = run_cli("curate --posts " + bad_posts + " --emoji-lib " +
                       fixture_path("emoji_library.tsv") + " --out-dir " + tmp.file("out2"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find(":1") != std::string::npos);
}

TEST_CASE("cli export writes chat records") {
    TempDir tmp;
    const std::string out = tmp.file("chat.jsonl");
    auto result = run_cli("export --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                          " --split val --out " + out);
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("wrote 100 records") != std::string::npos);
    auto content = testsupport::slurp(out);
    CHECK(std::count(content.begin(), content.end(), '\n') == 100);

    auto bad = run_cli("export --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                       " --split val --out " + tmp.file("x.jsonl") +
                       " --user-wrapper 'no placeholder'");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli train on the committed synthetic corpus") {
    TempDir tmp;
    const std::string out_dir = tmp.file("run");
    const std::string base = "train --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                             " --vocab-size 200 --out-dir " + out_dir;

    SUBCASE("defaults give a 20-epoch loss curve and 20 checkpoints") {
        auto result = run_cli(base);
        CAPTURE(result.output);
        REQUIRE(result.exit_code == 0);
        auto csv = testsupport::slurp(out_dir + "/loss.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
        CHECK(csv.rfind("epoch,train_loss,val_loss\n1,", 0) == 0);
        int checkpoints = 0;
        for (auto& entry : std::filesystem::directory_iterator(out_dir + "/checkpoints")) {
            (void)entry;
            ++checkpoints;
        }
        CHECK(checkpoints == 20);
        auto summary = json::parse(testsupport::slurp(out_dir + "/summary.json"));
        CHECK(summary["epochs"] == 20);
        CHECK(summary["final_train_loss"].get<double>() < 0.6931471805599453);
    }

    SUBCASE("--epochs 1 gives a single-epoch curve") {
        auto result = run_cli(base + " --epochs 1");
        REQUIRE(result.exit_code == 0);
        auto csv = testsupport::slurp(out_dir + "/loss.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    }

    SUBCASE("invalid dropout exits 2 before training") {
        auto result = run_cli(base + " --lora-dropout 2");
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("lora_dropout") != std::string::npos);
        CHECK_FALSE(std::filesystem::exists(out_dir + "/loss.csv"));
    }

    SUBCASE("two runs are bit-identical; prune keeps one checkpoint") {
        auto r1 = run_cli(base + " --epochs 5");
        REQUIRE(r1.exit_code == 0);
        auto hash1 = util::sha256_file_hex(out_dir + "/loss.csv");
        const std::string out2 = tmp.file("run2");
        auto r2 = run_cli("train --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                          " --vocab-size 200 --epochs 5 --out-dir " + out2);
        REQUIRE(r2.exit_code == 0);
        CHECK(util::sha256_file_hex(out2 + "/loss.csv") == hash1);

        const std::string out3 = tmp.file("run3");
        auto r3 = run_cli("train --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                          " --vocab-size 200 --epochs 5 --prune-to-best --out-dir " + out3);
        REQUIRE(r3.exit_code == 0);
        int kept = 0;
        for (auto& entry : std::filesystem::directory_iterator(out3 + "/checkpoints")) {
            (void)entry;
            ++kept;
        }
        CHECK(kept == 1);
    }

    SUBCASE("config file with an unknown key exits 2") {
        const std::string cfg = tmp.file("bad.cfg");
        testsupport::spit(cfg, "learning_rte = 0.1\n");
        auto result = run_cli(base + " --config " + cfg);
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("unknown key") != std::string::npos);
    }
}

TEST_CASE("cli finetune-hosted against the standalone mock") {
    TempDir tmp;
    const std::string chat = tmp.file("chat.jsonl");
    {
        auto r = run_cli("export --corpus " + fixture_path("synthetic_separable_1000.jsonl") +
                         " --split val --out " + chat);
        REQUIRE(r.exit_code == 0);
    }
    const std::string out_dir = tmp.file("ft");

    SUBCASE("missing credential exits 2") {
        auto result = run_cli("finetune-hosted --file " + chat + " --base-url http://127.0.0.1:1 "
                              "--out-dir " + out_dir,
                              "env -u DEPKIT_API_KEY");
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("DEPKIT_API_KEY") != std::string::npos);
    }

    SUBCASE("scripted success records the model id; rerun needs --force") {
        auto provider = std::make_shared<hosted::MockProvider>();
        hosted::MockServer server(provider);
        const std::string env = "DEPKIT_API_KEY=sk-test DEPKIT_BASE_URL=" + server.base_url();
        const std::string cmd = "finetune-hosted --file " + chat +
                                " --poll-interval-ms 1 --deadline-s 30 --out-dir " + out_dir;
        auto result = run_cli(cmd, env);
        CAPTURE(result.output);
        REQUIRE(result.exit_code == 0);
        auto manifest = json::parse(testsupport::slurp(out_dir + "/manifest.json"));
        CHECK(manifest["status"] == "ok");
        CHECK(manifest["outputs"]["fine_tuned_model_id"].get<std::string>().rfind("ft:", 0) == 0);
        CHECK(manifest["config"]["n_epochs"] == "4");
        CHECK(manifest["config"]["batch_size"] == "4");
        CHECK(manifest["config"]["learning_rate_multiplier"] == "1.570000");
        // the credential never lands in the manifest
        CHECK(testsupport::slurp(out_dir + "/manifest.json").find("sk-test") ==
              std::string::npos);

        auto again = run_cli(cmd, env);
        CHECK(again.exit_code == 2);
        CHECK(again.output.find("--force") != std::string::npos);

        auto forced = run_cli(cmd + " --force", env);
        CHECK(forced.exit_code == 0);
        server.stop();
    }

    SUBCASE("scripted failure exits 3") {
        auto script = hosted::MockScript::from_file(fixture_path("mock_failure.json"));
        auto provider = std::make_shared<hosted::MockProvider>(script);
        hosted::MockServer server(provider);
        auto result = run_cli("finetune-hosted --file " + chat +
                                  " --poll-interval-ms 1 --deadline-s 30 --out-dir " + out_dir,
                              "DEPKIT_API_KEY=sk-test DEPKIT_BASE_URL=" + server.base_url());
        CHECK(result.exit_code == 3);
        auto manifest = json::parse(testsupport::slurp(out_dir + "/manifest.json"));
        CHECK(manifest["status"] == "failed");
        server.stop();
    }

    SUBCASE("unreachable provider exits 3") {
        auto result = run_cli("finetune-hosted --file " + chat +
                                  " --max-retries 0 --out-dir " + out_dir,
                              "DEPKIT_API_KEY=sk-test DEPKIT_BASE_URL=http://127.0.0.1:9");
        CHECK(result.exit_code == 3);
    }

    SUBCASE("invalid hyperparameters exit 2") {
        auto result = run_cli("finetune-hosted --file " + chat +
                                  " --n-epochs 0 --out-dir " + out_dir,
                              "DEPKIT_API_KEY=sk-test DEPKIT_BASE_URL=http://127.0.0.1:9");
        CHECK(result.exit_code == 2);
    }
}

TEST_CASE("cli predict and evaluate round-trip") {
    TempDir tmp;
    const std::string corpus_path = tmp.file("corpus.jsonl");
    auto corpus = testsupport::make_split_separable_corpus(200, 40, 31);
    corpus::write_corpus_jsonl(corpus, corpus_path);

    const std::string run_dir = tmp.file("run");
    auto train_result = run_cli("train --corpus " + corpus_path +
                                " --vocab-size 40 --epochs 10 --lr 0.5 --out-dir " + run_dir);
    REQUIRE(train_result.exit_code == 0);

    const std::string preds = tmp.file("preds.jsonl");
    auto predict_result = run_cli("predict --checkpoint " + run_dir +
                                  "/checkpoints/epoch-10.json --corpus " + corpus_path +
                                  " --split test --out " + preds);
    CAPTURE(predict_result.output);
    REQUIRE(predict_result.exit_code == 0);

    const std::string eval_dir = tmp.file("eval");
    auto eval_result = run_cli("evaluate --predictions " + preds + " --corpus " + corpus_path +
                               " --split test --model-name reference --out-dir " + eval_dir);
    CAPTURE(eval_result.output);
    REQUIRE(eval_result.exit_code == 0);
    auto metrics = json::parse(testsupport::slurp(eval_dir + "/metrics.json"));
    // separable data, trained to convergence: everything correct
    CHECK(metrics["accuracy"].get<double>() == 1.0);
    CHECK(metrics["precision"].get<double>() == 1.0);
    CHECK(metrics["recall"].get<double>() == 1.0);
    CHECK(metrics["unparsed"] == 0);
    CHECK(std::filesystem::exists(eval_dir + "/confusion.csv"));

    SUBCASE("unparsed predictions: excluded by default, wrong under --strict-unparsed") {
        auto parsed = infer::read_predictions_jsonl(preds);
        REQUIRE(parsed.size() >= 4);
        // blank out two answers the model got right
        parsed[0].label = infer::PredictionLabel::UNPARSED;
        parsed[1].label = infer::PredictionLabel::UNPARSED;
        const std::string mixed = tmp.file("mixed.jsonl");
        infer::write_predictions_jsonl(parsed, mixed);

        const std::string lax_dir = tmp.file("lax");
        auto lax = run_cli("evaluate --predictions " + mixed + " --corpus " + corpus_path +
                           " --split test --out-dir " + lax_dir);
        REQUIRE(lax.exit_code == 0);
        auto lax_metrics = json::parse(testsupport::slurp(lax_dir + "/metrics.json"));
        CHECK(lax_metrics["unparsed"] == 2);
        CHECK(lax_metrics["n"] == static_cast<int>(parsed.size()) - 2);
        CHECK(lax_metrics["accuracy"].get<double>() == 1.0);  // the rest are still right

        const std::string strict_dir = tmp.file("strict");
        auto strict = run_cli("evaluate --predictions " + mixed + " --corpus " + corpus_path +
                              " --split test --strict-unparsed --out-dir " + strict_dir);
        REQUIRE(strict.exit_code == 0);
        auto strict_metrics = json::parse(testsupport::slurp(strict_dir + "/metrics.json"));
        CHECK(strict_metrics["n"] == static_cast<int>(parsed.size()));
        CHECK(strict_metrics["accuracy"].get<double>() ==
              doctest::Approx(double(parsed.size() - 2) / parsed.size()));
        // strict unparsed answers land on the wrong side of the matrix
        CHECK(strict_metrics["fp"].get<int>() + strict_metrics["fn"].get<int>() == 2);
    }

    SUBCASE("artifact-producing subcommands leave manifests") {
        CHECK(std::filesystem::exists(preds + ".manifest.json"));
        CHECK(std::filesystem::exists(eval_dir + "/manifest.json"));
        auto manifest = json::parse(testsupport::slurp(preds + ".manifest.json"));
        CHECK(manifest["command"] == "predict");
        CHECK(manifest["status"] == "ok");
    }

    SUBCASE("disjoint id sets exit 2 and list offenders") {
        std::vector<infer::Prediction> rogue = {
            {"ghost-1", infer::PredictionLabel::DEPRESSED, "p=1.0", 0.1}};
        const std::string rogue_path = tmp.file("rogue.jsonl");
        infer::write_predictions_jsonl(rogue, rogue_path);
        auto bad = run_cli("evaluate --predictions " + rogue_path + " --corpus " + corpus_path +
                           " --split test --out-dir " + tmp.file("eval2"));
        CHECK(bad.exit_code == 2);
        CHECK(bad.output.find("ghost-1") != std::string::npos);
    }

    SUBCASE("hosted predict against the standalone mock") {
        auto provider = std::make_shared<hosted::MockProvider>();
        hosted::MockServer server(provider);
        const std::string hosted_preds = tmp.file("hosted_preds.jsonl");
        auto result = run_cli("predict --hosted-model ft:mock:1 --corpus " + corpus_path +
                                  " --split test --concurrency 2 --out " + hosted_preds,
                              "DEPKIT_API_KEY=sk-test DEPKIT_BASE_URL=" + server.base_url());
        CAPTURE(result.output);
        REQUIRE(result.exit_code == 0);
        auto predictions = infer::read_predictions_jsonl(hosted_preds);
        CHECK(predictions.size() == 20);  // 10% of 200
        for (const auto& p : predictions) {
            CHECK(p.label == infer::PredictionLabel::DEPRESSED);  // default mock reply
        }
        server.stop();
    }
}

TEST_CASE("cli report reproduces the golden comparative table") {
    TempDir tmp;
    const std::string out_txt = tmp.file("report.txt");
    auto text = run_cli("report --in " + fixture_path("comparison_rows.json") +
                        " --format text --out " + out_txt);
    REQUIRE(text.exit_code == 0);
    CHECK(testsupport::slurp(out_txt) ==
          testsupport::slurp(fixture_path("golden/comparison_report.txt")));

    const std::string out_csv = tmp.file("report.csv");
    auto csv = run_cli("report --in " + fixture_path("comparison_rows.json") + " --format csv --out " +
                       out_csv);
    REQUIRE(csv.exit_code == 0);
    CHECK(testsupport::slurp(out_csv) ==
          testsupport::slurp(fixture_path("golden/comparison_report.csv")));

    SUBCASE("duplicate model names exit 2") {
        auto dup = run_cli("report --in " + fixture_path("comparison_rows.json") + " --in " +
                           fixture_path("comparison_rows.json"));
        CHECK(dup.exit_code == 2);
    }

    SUBCASE("loss CSVs are validated and copied for plotting") {
        const std::string plot_dir = tmp.file("plots");
        auto ok = run_cli("report --in " + fixture_path("comparison_rows.json") + " --loss-csv " +
                          fixture_path("golden/loss_curve.csv") + " --out-dir " + plot_dir +
                          " --out " + tmp.file("r.txt"));
        REQUIRE(ok.exit_code == 0);
        CHECK(std::filesystem::exists(plot_dir + "/loss_curve.csv"));

        const std::string junk = tmp.file("junk.csv");
        testsupport::spit(junk, "nope\n");
        auto bad = run_cli("report --in " + fixture_path("comparison_rows.json") + " --loss-csv " +
                           junk + " --out-dir " + plot_dir);
        CHECK(bad.exit_code == 2);
    }
}
