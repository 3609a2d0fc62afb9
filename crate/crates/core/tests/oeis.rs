mod common;

use std::io::{Read, Write};
use std::net::TcpListener;
use std::thread;
use std::time::Duration;

use cfinite::oeis::{fetch_bfile, parse_bfile, FetchOptions, OeisError};
use common::fixture;

/// Serves one HTTP response on a local port and returns the base URL.
fn serve_once(status: &str, body: &str) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let response = format!(
        "HTTP/1.1 {status}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let handle = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut request = Vec::new();
        let mut buf = [0u8; 1024];
        while !request.windows(4).any(|w| w == b"\r\n\r\n") {
            let n = stream.read(&mut buf).unwrap();
            if n == 0 {
                break;
            }
            request.extend_from_slice(&buf[..n]);
        }
        stream.write_all(response.as_bytes()).unwrap();
        String::from_utf8_lossy(&request).into_owned()
    });
    (format!("http://{addr}"), handle)
}

fn options(base_url: String) -> FetchOptions {
    FetchOptions {
        network: true,
        timeout: Duration::from_secs(5),
        base_url,
    }
}

#[test]
fn fetch_parses_served_bfile() {
    let (base, server) = serve_once("200 OK", "0 0\n1 1\n2 1\n3 2\n4 3\n");
    let b = fetch_bfile("A000045", &options(base)).unwrap();
    assert_eq!(b.id.as_deref(), Some("A000045"));
    assert_eq!(b.entries.len(), 5);
    let request = server.join().unwrap();
    assert!(
        request.starts_with("GET /A000045/b000045.txt "),
        "{request}"
    );
}

#[test]
fn fetch_reports_http_status() {
    let (base, server) = serve_once("404 Not Found", "no such sequence");
    assert_eq!(
        fetch_bfile("A999999", &options(base)).unwrap_err(),
        OeisError::HttpStatus(404)
    );
    server.join().unwrap();
}

#[test]
fn fetch_reports_malformed_body() {
    let (base, server) = serve_once("200 OK", "<html>oops</html>\n");
    assert!(matches!(
        fetch_bfile("A000045", &options(base)).unwrap_err(),
        OeisError::FetchedMalformed(_)
    ));
    server.join().unwrap();
}

#[test]
fn fetch_reports_connection_failure() {
    // bind and drop to get a port that refuses connections
    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let err = fetch_bfile("A000045", &options(format!("http://127.0.0.1:{port}"))).unwrap_err();
    assert!(matches!(err, OeisError::Network(_)), "{err:?}");
}

#[test]
fn fetch_requires_network_flag_and_valid_id() {
    let opts = FetchOptions::default();
    assert_eq!(
        fetch_bfile("A000045", &opts).unwrap_err(),
        OeisError::NetworkDisabled
    );
    assert_eq!(
        fetch_bfile("45", &opts).unwrap_err(),
        OeisError::InvalidId("45".into())
    );
    assert_eq!(
        fetch_bfile("A00004x", &options("http://127.0.0.1:9".into())).unwrap_err(),
        OeisError::InvalidId("A00004x".into())
    );
}

#[test]
fn fixtures_round_trip() {
    for name in ["A000032.txt", "A078712.txt"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let b = parse_bfile(&text).unwrap();
        let data: String = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(b.serialize(), data, "{name}");
        assert_eq!(parse_bfile(&b.serialize()).unwrap().entries, b.entries);
        assert_eq!(b.id.as_deref(), Some(&name[..7]));
    }
}
