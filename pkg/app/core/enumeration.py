"""Concurrent execution of enumeration chunks."""
import asyncio
import logging
import time
from typing import Callable, Optional, Sequence, TypeVar

from app.config import get_settings

logger = logging.getLogger(__name__)

ChunkT = TypeVar("ChunkT")
ResultT = TypeVar("ResultT")


async def _gather_chunks(
    worker: Callable[[ChunkT], ResultT],
    chunks: Sequence[ChunkT],
    threads: int,
) -> list[ResultT]:
    semaphore = asyncio.Semaphore(threads)

    async def process_chunk(chunk: ChunkT) -> ResultT:
        async with semaphore:
            return await asyncio.to_thread(worker, chunk)

    # gather keeps submission order, so merges are independent of scheduling
    return await asyncio.gather(*(process_chunk(chunk) for chunk in chunks))


def run_chunked(
    worker: Callable[[ChunkT], ResultT],
    chunks: Sequence[ChunkT],
    threads: Optional[int] = None,
    label: str = "enumeration",
) -> list[ResultT]:
    """Apply ``worker`` to every chunk, at most ``threads`` at a time.

    Results come back in chunk order whatever the parallelism.
    """
    threads = max(1, threads or get_settings().hall_threads)
    start_time = time.time()
    if threads == 1 or len(chunks) <= 1:
        results = [worker(chunk) for chunk in chunks]
    else:
        results = asyncio.run(_gather_chunks(worker, list(chunks), threads))
    logger.debug(
        f"{label} finished: chunks={len(chunks)}, threads={threads}, "
        f"time={time.time() - start_time:.3f}s"
    )
    return results
