import argparse
import sys
from pathlib import Path

from .extract import ExtractionError, ExtractionManifest, extract_image_embeddings, extract_text_embeddings


def main(argv=None):
    ap = argparse.ArgumentParser(prog="embedtool", description="Extract painting embeddings as TSV.")
    ap.add_argument("kind", choices=["text", "image"])
    ap.add_argument("--corpus", type=Path, required=True)
    ap.add_argument("--images", type=Path)
    ap.add_argument("--out", type=Path, required=True)
    ap.add_argument("--batch-size", type=int, default=32)
    ap.add_argument("--model", help="override the default model id")
    args = ap.parse_args(argv)

    manifest = ExtractionManifest(corpus=args.corpus, out=args.out, images=args.images, batch_size=args.batch_size)
    if args.model:
        manifest.text_model = manifest.image_model = args.model
    try:
        out = (extract_text_embeddings if args.kind == "text" else extract_image_embeddings)(manifest)
    except (ExtractionError, ValueError, OSError) as e:
        print(f"embedtool: {e}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
