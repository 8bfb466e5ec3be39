from contextlib import asynccontextmanager
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import time

from app.api.classify import router as classify_router
from app.api.depth import router as depth_router
from app.core.config import settings
from app.core.exceptions import ComputationError, ValidationError
from app.core.logging_config import setup_logging, get_logger

# Setup logging FIRST
setup_logging()
logger = get_logger("app.main")


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"{settings.PROJECT_NAME} v{settings.VERSION} starting up (data dir {settings.DATA_DIR})")
    yield
    logger.info(f"{settings.PROJECT_NAME} shutting down...")


app = FastAPI(
    title=settings.PROJECT_NAME,
    version=settings.VERSION,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request logging middleware
@app.middleware("http")
async def log_requests(request: Request, call_next):
    start_time = time.time()

    logger.info(f"Depth kNN API call: {request.method} {request.url.path}")

    response = await call_next(request)

    process_time = time.time() - start_time
    logger.info(
        f"Depth kNN API answered {request.method} {request.url.path} "
        f"with {response.status_code} in {process_time:.4f}s"
    )

    return response


@app.exception_handler(ValidationError)
async def validation_error_handler(request: Request, exc: ValidationError):
    logger.warning(f"Rejected {request.method} {request.url.path}: {exc}")
    return JSONResponse(status_code=422, content={"detail": str(exc), "error": type(exc).__name__})


@app.exception_handler(ComputationError)
async def computation_error_handler(request: Request, exc: ComputationError):
    logger.warning(f"Degenerate computation on {request.method} {request.url.path}: {exc}")
    return JSONResponse(status_code=409, content={"detail": str(exc), "error": type(exc).__name__})


app.include_router(depth_router)
app.include_router(classify_router)


@app.get("/")
async def root():
    return {"message": f"{settings.PROJECT_NAME} is running!"}


@app.get("/health")
async def health_check():
    return {"status": "healthy", "version": settings.VERSION}
