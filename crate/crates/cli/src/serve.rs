use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{Context, Result};
use axum::extract::State;
use axum::http::header;
use axum::response::{Html, IntoResponse};
use axum::routing::get;
use axum::Router;
use tower_http::services::ServeDir;

/// Shown at `/` when no viewer build is given with `--assets`.
const PLACEHOLDER: &str = r#"<!doctype html>
<html>
<head><meta charset="utf-8"><title>csgdeck</title></head>
<body>
<h1>csgdeck</h1>
<p>No viewer assets are installed. The scene document is at <a href="/scene.json">/scene.json</a>.</p>
<p>Start the server with <code>--assets DIR</code> to serve a viewer build.</p>
</body>
</html>
"#;

pub fn router(scene: Vec<u8>, assets: Option<PathBuf>) -> Router {
    let scene = Arc::new(scene);
    let app = Router::new()
        .route("/scene.json", get(scene_json))
        .route("/healthz", get(|| async { "ok\n" }))
        .with_state(scene);
    match assets {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.route("/", get(|| async { Html(PLACEHOLDER) })),
    }
}

async fn scene_json(State(scene): State<Arc<Vec<u8>>>) -> impl IntoResponse {
    (
        [
            (header::CONTENT_TYPE, "application/json"),
            (header::CACHE_CONTROL, "no-store"),
        ],
        scene.as_ref().clone(),
    )
}

/// Serves until the process is killed. Prints the bound address first so
/// callers passing port 0 can find it.
pub fn serve(scene: Vec<u8>, assets: Option<PathBuf>, port: u16, open: bool) -> Result<()> {
    let rt = tokio::runtime::Runtime::new().context("starting the async runtime")?;
    rt.block_on(async move {
        let addr = SocketAddr::from(([127, 0, 0, 1], port));
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .with_context(|| format!("binding {addr}"))?;
        let url = format!("http://{}", listener.local_addr()?);
        println!("listening on {url}");
        if open {
            if let Err(e) = webbrowser::open(&url) {
                log::warn!("could not open a browser: {e}");
            }
        }
        axum::serve(listener, router(scene, assets))
            .await
            .context("serving")
    })
}
