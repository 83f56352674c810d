use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::Context;
use clap::Parser;
use pcrank_core::SolverOptions;
use pcrank_service::{router, Store};
use tracing_subscriber::EnvFilter;

/// Serve pcrank revision sessions over HTTP.
#[derive(Debug, Parser)]
#[command(name = "pcrank-serve", version)]
struct Args {
    /// Address to listen on.
    #[arg(long, env = "PCRANK_BIND", default_value = "127.0.0.1:8080")]
    bind: SocketAddr,

    /// JSON-lines file recording session changes; replayed at startup.
    #[arg(long, env = "PCRANK_PERSIST")]
    persist: Option<PathBuf>,

    /// Power iteration tolerance.
    #[arg(long, default_value_t = SolverOptions::default().tol)]
    tol: f64,

    /// Power iteration limit.
    #[arg(long, default_value_t = SolverOptions::default().max_iter)]
    max_iter: usize,
}

#[tokio::main]
async fn main() -> anyhow::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(
            EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")),
        )
        .init();
    let args = Args::parse();

    let options = SolverOptions {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    options.validate().context("invalid solver options")?;

    let store = match &args.persist {
        Some(path) => {
            let store = Store::with_journal(path, options).context("replaying session journal")?;
            tracing::info!(path = %path.display(), sessions = store.len(), "journal loaded");
            store
        }
        None => Store::new(options),
    };

    let listener = tokio::net::TcpListener::bind(args.bind)
        .await
        .with_context(|| format!("binding {}", args.bind))?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(Arc::new(store)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
