from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .corpus import load_corpus, painting_text
from .tsv import write_tsv

TEXT_MODEL = "all-MiniLM-L6-v2"
IMAGE_MODEL = "resnet50"

# An encoder maps a batch of inputs to a batch of equal-width vectors.
TextEncoder = Callable[[Sequence[str]], Sequence[Sequence[float]]]
ImageEncoder = Callable[[Sequence[Path]], Sequence[Sequence[float]]]


class ExtractionError(RuntimeError):
    pass


@dataclass
class ExtractionManifest:
    corpus: Path
    out: Path
    images: Optional[Path] = None
    text_model: str = TEXT_MODEL
    image_model: str = IMAGE_MODEL
    batch_size: int = 32


def _batched(items, size):
    if size < 1:
        raise ExtractionError("batch size must be at least 1")
    for i in range(0, len(items), size):
        yield items[i : i + size]


def sentence_encoder(model_name=TEXT_MODEL):
    from sentence_transformers import SentenceTransformer

    model = SentenceTransformer(model_name, device="cpu")
    model.eval()

    def encode(texts):
        return model.encode(list(texts), convert_to_numpy=True, show_progress_bar=False).tolist()

    return encode


def resnet_encoder(model_name=IMAGE_MODEL):
    """Global-average-pooled penultimate features of an ImageNet ResNet."""
    import torch
    import torchvision
    from PIL import Image

    weights = torchvision.models.get_model_weights(model_name).DEFAULT
    net = torchvision.models.get_model(model_name, weights=weights)
    net.fc = torch.nn.Identity()
    net.eval()
    preprocess = weights.transforms()

    def encode(paths):
        with torch.no_grad():
            batch = torch.stack([preprocess(Image.open(p).convert("RGB")) for p in paths])
            return net(batch).tolist()

    return encode


def extract_text_embeddings(manifest, encoder: Optional[TextEncoder] = None):
    """One vector per painting from its concatenated metadata text."""
    paintings = load_corpus(manifest.corpus)
    texts = [painting_text(p) for p in paintings]
    empty = [p.id for p, t in zip(paintings, texts) if not t]
    if empty:
        raise ExtractionError("paintings with empty text: " + ", ".join(empty))
    encoder = encoder or sentence_encoder(manifest.text_model)
    vectors = []
    for batch in _batched(texts, manifest.batch_size):
        vectors.extend(encoder(batch))
    write_tsv(manifest.out, "bert", [p.id for p in paintings], vectors, {"model": manifest.text_model})
    return manifest.out


def extract_image_embeddings(manifest, encoder: Optional[ImageEncoder] = None):
    """One pooled feature vector per painting image; the file is written
    only when every image was read."""
    if manifest.images is None:
        raise ExtractionError("an image directory is required")
    paintings = load_corpus(manifest.corpus)
    paths = []
    for p in paintings:
        ref = p.image_ref or f"{p.id}.jpg"
        path = Path(manifest.images) / ref
        if not path.is_file():
            path = Path(manifest.images) / Path(ref).name
        if not path.is_file():
            raise ExtractionError(f"no image for painting '{p.id}' ({ref})")
        paths.append(path)
    encoder = encoder or resnet_encoder(manifest.image_model)
    vectors = []
    for ids, batch in zip(_batched([p.id for p in paintings], manifest.batch_size),
                          _batched(paths, manifest.batch_size)):
        try:
            vectors.extend(encoder(batch))
        except Exception as e:
            raise ExtractionError(f"unreadable image among {', '.join(ids)}: {e}") from e
    attributes = {"model": manifest.image_model, "pooling": "global_average"}
    write_tsv(manifest.out, "resnet", [p.id for p in paintings], vectors, attributes)
    return manifest.out
