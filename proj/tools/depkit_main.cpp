#include <iostream>

#include "CLI11.hpp"

#include "depkit/cli/commands.hpp"

namespace {

using namespace depkit;

void add_template_flags(CLI::App* cmd, cli::TemplateArgs& tmpl) {
    cmd->add_option("--system-instruction", tmpl.system_instruction,
                    "System message for the chat prompt");
    cmd->add_option("--user-wrapper", tmpl.user_wrapper,
                    "User message template; must contain {post} exactly once");
    cmd->add_option("--positive-keyword", tmpl.positive_keyword,
                    "Keyword the model answers for depressive posts");
    cmd->add_option("--negative-keyword", tmpl.negative_keyword,
                    "Keyword the model answers for non-depressive posts");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"depkit: curate, fine-tune, and evaluate depression-detection classifiers"};
    app.require_subcommand(1);

    cli::CurateArgs curate;
    auto* curate_cmd = app.add_subcommand(
        "curate", "Label raw posts with the D1/D2/D3 anchor rules and split the corpus");
    curate_cmd->add_option("--posts", curate.posts_path, "Posts JSONL file")->required();
    curate_cmd->add_option("--emoji-lib", curate.emoji_lib_path, "Emoji sentiment TSV")
        ->required();
    curate_cmd->add_option("--d3-labels", curate.d3_labels_path,
                           "TSV of reviewed candidate labels (post_id<TAB>label)");
    curate_cmd->add_option("--out-dir", curate.out_dir, "Output directory");
    curate_cmd->add_option("--diagnosis-pattern", curate.extra_diagnosis_patterns,
                           "Extra diagnosis phrase (repeatable)");
    curate_cmd->add_option("--anchor-term", curate.anchor_term,
                           "Candidate/exclusion token (default: depress)");
    curate_cmd->add_option("--window-start", curate.window_start,
                           "Non-depression window start (ISO-8601 UTC)");
    curate_cmd->add_option("--window-end", curate.window_end,
                           "Non-depression window end (ISO-8601 UTC)");
    curate_cmd->add_option("--train-ratio", curate.ratio_train, "TRAIN fraction");
    curate_cmd->add_option("--val-ratio", curate.ratio_val, "VAL fraction");
    curate_cmd->add_option("--test-ratio", curate.ratio_test, "TEST fraction");
    curate_cmd->add_option("--seed", curate.seed, "Split seed");

    cli::ExportArgs exp;
    auto* export_cmd =
        app.add_subcommand("export", "Write a split as a chat-format fine-tuning file");
    export_cmd->add_option("--corpus", exp.corpus_path, "Curated corpus JSONL")->required();
    export_cmd->add_option("--split", exp.split, "train|val|test");
    export_cmd->add_option("--out", exp.out_path, "Output JSONL path")->required();
    add_template_flags(export_cmd, exp.tmpl);

    cli::TrainArgs train;
    auto* train_cmd =
        app.add_subcommand("train", "Train the local reference backend with per-epoch eval");
    train_cmd->add_option("--corpus", train.corpus_path, "Curated corpus JSONL")->required();
    train_cmd->add_option("--config", train.config_path, "key = value training config file");
    train_cmd->add_option("--out-dir", train.out_dir, "Output directory");
    train_cmd->add_option("--epochs", train.epochs, "Override num_train_epochs");
    train_cmd->add_option("--lr", train.learning_rate, "Override learning_rate");
    train_cmd->add_option("--lora-dropout", train.lora_dropout, "Override lora_dropout");
    train_cmd->add_option("--lora-r", train.lora_r, "Override adapter rank");
    train_cmd->add_option("--seed", train.seed, "Override seed");
    train_cmd->add_option("--vocab-size", train.vocab_size, "Reference backend vocabulary size");
    train_cmd->add_flag("--prune-to-best", train.prune_to_best,
                        "Keep only the best-val checkpoint");

    cli::FinetuneHostedArgs hosted;
    auto* hosted_cmd = app.add_subcommand(
        "finetune-hosted", "Upload a chat file and run a hosted fine-tuning job to completion");
    hosted_cmd->add_option("--file", hosted.training_file, "Chat-format JSONL")->required();
    hosted_cmd->add_option("--base-model", hosted.base_model, "Provider base model");
    hosted_cmd->add_option("--n-epochs", hosted.n_epochs, "Fine-tuning epochs");
    hosted_cmd->add_option("--batch-size", hosted.batch_size, "Fine-tuning batch size");
    hosted_cmd->add_option("--lr-multiplier", hosted.learning_rate_multiplier,
                           "Learning rate multiplier (provider-side)");
    hosted_cmd->add_option("--base-url", hosted.base_url, "Provider base URL");
    hosted_cmd->add_option("--out-dir", hosted.out_dir, "Output directory");
    hosted_cmd->add_option("--poll-interval-ms", hosted.poll_interval_ms, "Polling interval");
    hosted_cmd->add_option("--deadline-s", hosted.deadline_s, "Polling deadline in seconds");
    hosted_cmd->add_option("--max-retries", hosted.max_retries, "Transport retry budget");
    hosted_cmd->add_flag("--force", hosted.force, "Create a new job even if one completed");

    cli::PredictArgs predict;
    auto* predict_cmd = app.add_subcommand("predict", "Score posts with a trained classifier");
    predict_cmd->add_option("--checkpoint", predict.checkpoint_path,
                            "Local reference checkpoint JSON");
    predict_cmd->add_option("--hosted-model", predict.hosted_model, "Hosted fine-tuned model id");
    predict_cmd->add_option("--posts", predict.posts_path, "Posts JSONL to score");
    predict_cmd->add_option("--corpus", predict.corpus_path, "Curated corpus JSONL to score");
    predict_cmd->add_option("--split", predict.split, "Split when scoring a corpus");
    predict_cmd->add_option("--out", predict.out_path, "Predictions JSONL path");
    predict_cmd->add_option("--base-url", predict.base_url, "Provider base URL");
    predict_cmd->add_option("--rate", predict.max_requests_per_s,
                            "Request-rate ceiling (requests/s, 0 = off)");
    predict_cmd->add_option("--concurrency", predict.max_in_flight, "Max in-flight requests");
    predict_cmd->add_option("--max-retries", predict.max_retries, "Transport retry budget");
    add_template_flags(predict_cmd, predict.tmpl);

    cli::EvaluateArgs evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Confusion matrix and metrics for predictions");
    eval_cmd->add_option("--predictions", evaluate.predictions_path, "Predictions JSONL")
        ->required();
    eval_cmd->add_option("--corpus", evaluate.corpus_path, "Curated corpus with gold labels")
        ->required();
    eval_cmd->add_option("--split", evaluate.split, "train|val|test|all");
    eval_cmd->add_option("--model-name", evaluate.model_name, "Name for the report row");
    eval_cmd->add_option("--out-dir", evaluate.out_dir, "Output directory");
    eval_cmd->add_flag("--strict-unparsed", evaluate.strict_unparsed,
                       "Count unparsed answers as wrong predictions");

    cli::ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Comparative metrics table (text or CSV)");
    report_cmd->add_option("--in", report.inputs, "Metrics JSON (object or array; repeatable)")
        ->required();
    report_cmd->add_option("--format", report.format, "text|csv");
    report_cmd->add_option("--out", report.out_path, "Write the table here instead of stdout");
    report_cmd->add_option("--loss-csv", report.loss_csvs,
                           "Loss CSV to validate and copy for plotting (repeatable)");
    report_cmd->add_option("--out-dir", report.out_dir, "Directory for copied plot data");

    cli::MockProviderArgs mock;
    auto* mock_cmd =
        app.add_subcommand("mock-provider", "Serve the in-process provider mock over HTTP");
    mock_cmd->add_option("--port", mock.port, "Port (0 = pick a free one)");
    mock_cmd->add_option("--script", mock.script_path, "Mock script JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return depkit::cli::kExitValidation;
    }

    if (curate_cmd->parsed()) return cli::cmd_curate(curate, std::cout, std::cerr);
    if (export_cmd->parsed()) return cli::cmd_export(exp, std::cout, std::cerr);
    if (train_cmd->parsed()) return cli::cmd_train(train, std::cout, std::cerr);
    if (hosted_cmd->parsed()) return cli::cmd_finetune_hosted(hosted, std::cout, std::cerr);
    if (predict_cmd->parsed()) return cli::cmd_predict(predict, std::cout, std::cerr);
    if (eval_cmd->parsed()) return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
    if (report_cmd->parsed()) return cli::cmd_report(report, std::cout, std::cerr);
    if (mock_cmd->parsed()) return cli::cmd_mock_provider(mock, std::cout, std::cerr);
    return depkit::cli::kExitValidation;
}
