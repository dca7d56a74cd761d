"""Exception types shared across the package."""


class EarshotError(Exception):
    """Base class; every error raised by this package derives from it."""

    code = "error"


# --- audio ingest ---

class UnsupportedFormat(EarshotError):
    code = "unsupported_format"


class CorruptFile(EarshotError):
    code = "corrupt_file"


class EmptyClip(EarshotError):
    code = "empty_clip"


# --- dsp ---

class InvalidRange(EarshotError):
    code = "invalid_range"


# --- embedder ---

class InvalidConfig(EarshotError):
    code = "invalid_config"


class ShapeMismatch(EarshotError):
    code = "shape_mismatch"


class EmptyDataset(EarshotError):
    code = "empty_dataset"


class LabelOutOfRange(EarshotError):
    code = "label_out_of_range"


# --- few-shot core ---

class MissingSoundscape(EarshotError):
    code = "missing_soundscape"


class EmptyClass(EarshotError):
    code = "empty_class"


class DimensionMismatch(EarshotError):
    code = "dimension_mismatch"


class VersionMismatch(EarshotError):
    code = "version_mismatch"


# --- eval harness ---

class InvalidSpec(EarshotError):
    code = "invalid_spec"


class InsufficientData(EarshotError):
    code = "insufficient_data"


class ClassOverlap(EarshotError):
    code = "class_overlap"


class TooFewTasks(EarshotError):
    code = "too_few_tasks"


class LengthMismatch(EarshotError):
    code = "length_mismatch"


# --- recognition service ---

class UnknownLocation(EarshotError):
    code = "unknown_location"


class UnknownLibraryClass(EarshotError):
    code = "unknown_library_class"


class BadAudio(EarshotError):
    code = "bad_audio"


class IncompleteClasses(EarshotError):
    code = "incomplete_classes"


class Untrained(EarshotError):
    code = "untrained"


class UnknownPrediction(EarshotError):
    code = "unknown_prediction"
