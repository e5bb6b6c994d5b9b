# TSV storage for prepared corpora, score files and gold labels
